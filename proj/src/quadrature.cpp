#include "fracbvp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracbvp {
namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double* p, double* dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *p = p1;
  *dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Nodes/weights of the n-point rule on [-1, 1]. Newton from the Chebyshev-like
// initial guess converges in a handful of steps for n <= 32.
void gauss_legendre_reference(int n, std::vector<double>* xs, std::vector<double>* ws) {
  xs->assign(n, 0.0);
  ws->assign(n, 0.0);
  const double pi = std::numbers::pi;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(pi * (k + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 64; ++it) {
      legendre(n, x, &p, &dp);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    legendre(n, x, &p, &dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // roots come out in descending order; store symmetric pair ascending
    (*xs)[k] = -x;
    (*ws)[k] = w;
    (*xs)[n - 1 - k] = x;
    (*ws)[n - 1 - k] = w;
  }
  if (n % 2 == 1) {  // center root is exactly 0
    (*xs)[n / 2] = 0.0;
    double p, dp;
    legendre(n, 0.0, &p, &dp);
    (*ws)[n / 2] = 2.0 / (dp * dp);
  }
}

}  // namespace

QuadratureRulePtr gauss_legendre_composite(int panels, int order) {
  if (panels < 1) throw std::domain_error("gauss_legendre_composite: panels must be >= 1");
  if (order < 2 || order > 32) {
    throw std::domain_error("gauss_legendre_composite: order must lie in [2, 32]");
  }

  std::vector<double> xs, ws;
  gauss_legendre_reference(order, &xs, &ws);

  const double h = std::numbers::pi / panels;
  std::vector<double> nodes, weights;
  nodes.reserve(static_cast<std::size_t>(panels) * order);
  weights.reserve(static_cast<std::size_t>(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (int k = 0; k < order; ++k) {
      nodes.push_back(a + 0.5 * h * (xs[k] + 1.0));
      weights.push_back(0.5 * h * ws[k]);
    }
  }
  return std::make_shared<QuadratureRule>(panels, order, std::move(nodes),
                                          std::move(weights));
}

GridFunction::GridFunction(QuadratureRulePtr rule, int components)
    : rule_(std::move(rule)), components_(components) {
  if (!rule_) throw std::invalid_argument("GridFunction: null rule");
  if (components < 1) throw std::invalid_argument("GridFunction: components must be >= 1");
  values_.assign(static_cast<std::size_t>(rule_->size()) * components, 0.0);
}

GridFunction::GridFunction(QuadratureRulePtr rule, int components,
                           std::vector<double> values)
    : rule_(std::move(rule)), components_(components), values_(std::move(values)) {
  if (!rule_) throw std::invalid_argument("GridFunction: null rule");
  if (components < 1) throw std::invalid_argument("GridFunction: components must be >= 1");
  if (values_.size() != static_cast<std::size_t>(rule_->size()) * components) {
    throw std::invalid_argument("GridFunction: values size does not match rule");
  }
}

GridFunction sample(const QuadratureRulePtr& rule, int components,
                    const std::function<void(double, std::span<double>)>& fn) {
  GridFunction g(rule, components);
  std::vector<double> buf(components);
  for (int q = 0; q < rule->size(); ++q) {
    fn(rule->nodes()[q], buf);
    for (int i = 0; i < components; ++i) g.at(q, i) = buf[i];
  }
  return g;
}

SineCoefficients project_to_sine(const GridFunction& g, int modes,
                                 std::vector<std::string>* warnings) {
  if (modes < 1) throw std::domain_error("project_to_sine: modes must be >= 1");
  const QuadratureRule& rule = *g.rule();
  if (modes > rule.resolvable_modes() && warnings != nullptr) {
    warnings->push_back(
        "project_to_sine: requested " + std::to_string(modes) +
        " modes but the rule resolves only about " +
        std::to_string(rule.resolvable_modes()) +
        " (panels*order/4); higher modes will alias");
  }
  const int m = g.components();
  const int q_count = rule.size();
  const double scale = std::sqrt(2.0 / std::numbers::pi);
  SineCoefficients out(modes, m);
  for (int j = 1; j <= modes; ++j) {
    for (int q = 0; q < q_count; ++q) {
      const double k = rule.weights()[q] * scale * std::sin(j * rule.nodes()[q]);
      for (int i = 0; i < m; ++i) {
        out.at(j - 1, i) += k * g.at(q, i);
      }
    }
  }
  return out;
}

GridFunction evaluate(const SineCoefficients& x, const QuadratureRulePtr& rule) {
  GridFunction g(rule, x.components());
  const double scale = std::sqrt(2.0 / std::numbers::pi);
  for (int q = 0; q < rule->size(); ++q) {
    const double t = rule->nodes()[q];
    for (int j = 1; j <= x.modes(); ++j) {
      const double s = scale * std::sin(j * t);
      for (int i = 0; i < x.components(); ++i) {
        g.at(q, i) += s * x.at(j - 1, i);
      }
    }
  }
  return g;
}

double integrate_inner(const GridFunction& f, const GridFunction& g) {
  if (f.rule() != g.rule()) {
    throw std::invalid_argument("integrate_inner: arguments use different rules");
  }
  if (f.components() != g.components()) {
    throw std::invalid_argument("integrate_inner: component counts differ");
  }
  const QuadratureRule& rule = *f.rule();
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    double dot = 0.0;
    for (int i = 0; i < f.components(); ++i) dot += f.at(q, i) * g.at(q, i);
    acc += rule.weights()[q] * dot;
  }
  return acc;
}

double integrate(const GridFunction& f) {
  if (f.components() != 1) throw std::invalid_argument("integrate: expects one component");
  const QuadratureRule& rule = *f.rule();
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) acc += rule.weights()[q] * f.at(q, 0);
  return acc;
}

double integrate_interval(double a, double b, int panels, int order,
                          const std::function<double(double)>& f) {
  if (!(a < b)) throw std::domain_error("integrate_interval: needs a < b");
  if (panels < 1) throw std::domain_error("integrate_interval: panels must be >= 1");
  if (order < 2 || order > 32) {
    throw std::domain_error("integrate_interval: order must lie in [2, 32]");
  }
  std::vector<double> xs, ws;
  gauss_legendre_reference(order, &xs, &ws);
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double left = a + p * h;
    for (int k = 0; k < order; ++k) {
      acc += 0.5 * h * ws[k] * f(left + 0.5 * h * (xs[k] + 1.0));
    }
  }
  return acc;
}

}  // namespace fracbvp

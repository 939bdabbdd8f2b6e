#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fracbvp/sine_basis.hpp"

namespace fracbvp {

// Composite Gauss-Legendre rule on (0, pi): `panels` equal subintervals with
// an `order`-point rule on each. All nodes are strictly interior, so
// integrands may blow up at the endpoints. Exact for polynomials of degree
// <= 2*order - 1 on each panel.
class QuadratureRule {
public:
  QuadratureRule(int panels, int order, std::vector<double> nodes,
                 std::vector<double> weights)
      : panels_(panels), order_(order), nodes_(std::move(nodes)),
        weights_(std::move(weights)) {}

  int panels() const noexcept { return panels_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  // Highest sine mode the rule integrates reliably; projections beyond it
  // alias.
  int resolvable_modes() const noexcept { return panels_ * order_ / 4; }

private:
  int panels_;
  int order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using QuadratureRulePtr = std::shared_ptr<const QuadratureRule>;

// panels >= 1, order in [2, 32]; throws std::domain_error outside that.
QuadratureRulePtr gauss_legendre_composite(int panels, int order);

// Node samples of an R^m-valued function, node-major: component i at node q
// lives at values[q*m + i].
class GridFunction {
public:
  GridFunction(QuadratureRulePtr rule, int components);
  GridFunction(QuadratureRulePtr rule, int components, std::vector<double> values);

  const QuadratureRulePtr& rule() const noexcept { return rule_; }
  int components() const noexcept { return components_; }

  double at(int node, int component) const {
    return values_[static_cast<std::size_t>(node) * components_ + component];
  }
  double& at(int node, int component) {
    return values_[static_cast<std::size_t>(node) * components_ + component];
  }

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

private:
  QuadratureRulePtr rule_;
  int components_;
  std::vector<double> values_;
};

// Samples fn(t, out) at every node.
GridFunction sample(const QuadratureRulePtr& rule, int components,
                    const std::function<void(double, std::span<double>)>& fn);

// Coefficients b_{j,i} = integral of g_i(t) sqrt(2/pi) sin(j t) over (0, pi),
// evaluated with g's rule. Appends a warning to *warnings (if non-null) when
// `modes` exceeds the rule's resolvable bandwidth.
SineCoefficients project_to_sine(const GridFunction& g, int modes,
                                 std::vector<std::string>* warnings = nullptr);

// Synthesis of x at the rule's nodes.
GridFunction evaluate(const SineCoefficients& x, const QuadratureRulePtr& rule);

// Scalar inner product: integral of the pointwise dot product f(t) . g(t).
// Both arguments must share one rule object and component count.
double integrate_inner(const GridFunction& f, const GridFunction& g);

double integrate(const GridFunction& f);  // components must be 1

// Composite Gauss-Legendre on an arbitrary interval [a, b] (a < b); serves
// integrals living off (0, pi), e.g. shifted-overlap pieces.
double integrate_interval(double a, double b, int panels, int order,
                          const std::function<double(double)>& f);

}  // namespace fracbvp

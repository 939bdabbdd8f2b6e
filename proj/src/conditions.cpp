#include "fracbvp/conditions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracbvp/zeta.hpp"

namespace fracbvp {

ConditionReport check_conditions(const ProblemSpec& spec, const SineCoefficients& x,
                                 const QuadratureRulePtr& rule) {
  const double beta = spec.beta.value();
  if (!(beta > 0.5)) {
    throw std::domain_error(
        "check_conditions: requires beta > 1/2 (threshold pi/(2 zeta(2 beta)) "
        "needs zeta evaluated right of its pole)");
  }
  const int m = spec.m;
  if (x.components() != m) {
    throw std::invalid_argument("check_conditions: x has wrong component count");
  }

  const GridFunction x_grid = evaluate(x, rule);
  const GridFunction u_grid = sample_parameter(spec, rule);
  const NodalProblemData data = sample_problem(spec, x_grid, u_grid);

  ConditionReport report;
  double l1 = 0.0;
  double sup_f = 0.0;
  double max_eig = -std::numeric_limits<double>::infinity();

  Eigen::MatrixXd sym(m, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for (int q = 0; q < rule->size(); ++q) {
    double frob2 = 0.0;
    for (int k = 0; k < m * m; ++k) {
      const double v = data.jac_x.at(q, k);
      frob2 += v * v;
    }
    const double frob = std::sqrt(frob2);
    l1 += rule->weights()[q] * frob;
    sup_f = std::max(sup_f, frob);

    for (int i = 0; i < m; ++i) {
      for (int l = 0; l < m; ++l) {
        sym(i, l) = 0.5 * (data.jac_x.at(q, i * m + l) + data.jac_x.at(q, l * m + i));
      }
    }
    if (m == 1) {
      max_eig = std::max(max_eig, sym(0, 0));
    } else {
      eig.compute(sym, Eigen::EigenvaluesOnly);
      max_eig = std::max(max_eig, eig.eigenvalues().maxCoeff());
    }
  }

  report.cond_a.lhs = l1;
  report.cond_a.threshold = std::numbers::pi / (2.0 * zeta(2.0 * beta).value);
  report.cond_a.holds = l1 < report.cond_a.threshold;

  report.cond_b.max_symmetric_eigenvalue = max_eig;
  report.cond_b.holds = max_eig <= 0.0;

  report.cond_c.sup_frobenius = sup_f;
  report.cond_c.holds = sup_f < report.cond_c.threshold;

  if (spec.growth_a) {
    double norm2 = 0.0;
    const std::span<const double> none;
    for (int q = 0; q < rule->size(); ++q) {
      const double a = spec.growth_a->eval(rule->nodes()[q], none, none);
      if (a < 0.0) {
        throw std::domain_error(
            "check_conditions: growth bound a(t) sampled negative at t = " +
            std::to_string(rule->nodes()[q]));
      }
      norm2 += rule->weights()[q] * a * a;
    }
    CoercivityCheck c;
    c.lhs = std::sqrt(2.0 / std::numbers::pi * zeta(4.0 * beta).value) *
            std::sqrt(norm2);
    c.holds = c.lhs < 1.0;
    report.coercivity = c;
  }

  report.any_holds = report.cond_a.holds || report.cond_b.holds || report.cond_c.holds;
  return report;
}

std::pair<double, double> shift_compactness_test(const SineCoefficients& g,
                                                 const FractionalOrder& beta,
                                                 double h) {
  if (!(beta.value() > 0.5)) {
    throw std::domain_error("shift_compactness_test: requires beta > 1/2");
  }
  if (!(h > 0.0) || !(h < std::numbers::pi)) {
    throw std::domain_error("shift_compactness_test: requires 0 < h < pi");
  }

  const SineCoefficients x = apply_inverse_fractional(g, beta);
  const int m = x.components();
  std::vector<double> va(m), vb(m);

  const auto sq_norm_at = [&](double t) {
    evaluate_at(x, t, va);
    double s = 0.0;
    for (double v : va) s += v * v;
    return s;
  };
  const auto sq_diff_at = [&](double t) {
    evaluate_at(x, t, va);
    evaluate_at(x, t + h, vb);
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      const double d = vb[i] - va[i];
      s += d * d;
    }
    return s;
  };

  // resolution: integrands are band-limited to twice the mode count
  const int panels = std::max(8, x.modes());
  const double pi = std::numbers::pi;
  const double lhs = integrate_interval(0.0, h, panels, 12, sq_norm_at) +
                     integrate_interval(pi - h, pi, panels, 12, sq_norm_at) +
                     integrate_interval(0.0, pi - h, panels, 12, sq_diff_at);

  const double z4 = zeta(4.0 * beta.value()).value;
  const double z41 = zeta(4.0 * beta.value() - 1.0).value;
  const double g2 = norm_l2(g) * norm_l2(g);
  const double bound = (4.0 / pi * z4 + 4.0 * z41) * g2 * h;
  return {lhs, bound};
}

}  // namespace fracbvp

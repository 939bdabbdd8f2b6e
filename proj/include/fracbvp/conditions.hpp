#pragma once

#include <optional>
#include <utility>

#include "fracbvp/problem.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/sine_basis.hpp"

namespace fracbvp {

// Solvability checks for the linearized operator along a trajectory. The
// multiplier is Lambda(t) = f_x(t, x(t), u(t)); any one passing condition
// suffices.

// a) L1 norm of the nodal Frobenius norm below pi / (2 zeta(2 beta)).
struct ConditionA {
  double lhs = 0.0;
  double threshold = 0.0;
  bool holds = false;
};

// b) symmetric part of Lambda(t) negative semidefinite at every node.
struct ConditionB {
  double max_symmetric_eigenvalue = 0.0;
  bool holds = false;
};

// c) nodal Frobenius norm below 1 everywhere.
struct ConditionC {
  double sup_frobenius = 0.0;
  double threshold = 1.0;
  bool holds = false;
};

// Optional coercivity check from a user-supplied growth majorant a(t):
// sqrt(2/pi * zeta(4 beta)) * |a|_L2 < 1.
struct CoercivityCheck {
  double lhs = 0.0;
  bool holds = false;
};

struct ConditionReport {
  ConditionA cond_a;
  ConditionB cond_b;
  ConditionC cond_c;
  std::optional<CoercivityCheck> coercivity;
  bool any_holds = false;
};

// Samples Lambda along the trajectory x (synthesized at the rule's nodes)
// with u from the problem. Requires beta > 1/2 (the cond_a threshold needs
// zeta(2 beta) finite); throws std::domain_error below that. The coercivity
// field is present exactly when the problem carries growth_a.
ConditionReport check_conditions(const ProblemSpec& spec, const SineCoefficients& x,
                                 const QuadratureRulePtr& rule);

// Quantitative compactness probe: for x_g = apply_inverse_fractional(g),
// returns (lhs, bound) with
//   lhs   = integral over R of |x~_g(t+h) - x~_g(t)|^2 dt (zero extension),
//   bound = ((4/pi) zeta(4 beta) + 4 zeta(4 beta - 1)) |g|_L2^2 h.
// The contract asserted by tests is lhs <= bound. Requires beta > 1/2 and
// 0 < h < pi.
std::pair<double, double> shift_compactness_test(const SineCoefficients& g,
                                                 const FractionalOrder& beta,
                                                 double h);

}  // namespace fracbvp

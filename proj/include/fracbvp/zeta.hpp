#pragma once

namespace fracbvp {

// Riemann zeta evaluated by Euler-Maclaurin summation. `value` carries the
// computed sum; `tail_bound` is a rigorous bound on the truncation error of
// the underlying series manipulation (floating-point rounding, a few ulp of
// `value`, is not included). For every s > 1 reachable here the bound is
// far below 1e-12.
struct ZetaValue {
  double s = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
};

// Requires s > 1; throws std::domain_error otherwise (the series diverges at
// s = 1 and the operator constants downstream all live in s > 1).
ZetaValue zeta(double s);

}  // namespace fracbvp

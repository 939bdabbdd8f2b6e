#pragma once

#include <iosfwd>
#include <string>

namespace fracbvp {

// Built-in self-checks behind `verify <suite>`. Suites:
//   "diagonal"  affine problems f = g(t) - k*x with closed-form solutions
//               b_j / ((j^2)^beta + k); checks coefficients and that Newton
//               accepts exactly one step.
//   "example"   the bundled two-component problem (a = b = 0.1, beta = 1):
//               convergence, the hypothesis margin, and agreement of two
//               solves started from different initial guesses.
//   "all"       both of the above.
// Prints one line per case to `out` and returns the number of failures.
// Unknown suite names throw std::invalid_argument.
int run_verify_suite(const std::string& name, std::ostream& out);

}  // namespace fracbvp

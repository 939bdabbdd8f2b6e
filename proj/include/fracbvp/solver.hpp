#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbvp/conditions.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/sine_basis.hpp"

namespace fracbvp {

// Galerkin matrix of the linearized operator. Row/column index (j-1)*m + i
// for mode j, component i (both 1-based in formulas; the flat index is
// 0-based), matching SineCoefficients::data() exactly.
struct LinearizedSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;  // empty until the caller supplies one
  int modes = 0;
  int components = 0;
};

struct NewtonConfig {
  int max_iters = 50;
  double residual_tol = 1e-10;
  double step_tol = 1e-12;
  double damping = 0.5;
  int max_backtracks = 30;
};

struct LinearSolveInfo {
  double condition_estimate = 0.0;  // 1 / rcond from the LU factorization
  double residual_inf = 0.0;        // |A h - rhs|_inf achieved
  bool residual_warning = false;
};

struct SolveReport {
  int iterations = 0;
  // L2 norms of the projected residual D_beta a - P_J f at each accepted
  // iterate, starting with the initial one. The backtracking line search
  // keeps this sequence nonincreasing. The full-grid residual (which also
  // carries the spectral tail of f outside the first J modes) is reported
  // separately below.
  std::vector<double> residual_history;
  double final_step_norm = 0.0;
  double final_grid_residual = 0.0;
  double condition_estimate = 0.0;
  std::optional<ConditionReport> condition_verdicts;
  bool converged = false;
  std::vector<std::string> warnings;
};

// A = D_beta - M_Lambda with (M_Lambda)_{(j,i),(k,l)} the weighted quadrature
// sum of Lambda_{i,l}(t) (2/pi) sin(jt) sin(kt). `lambda` holds the m*m
// multiplier components row-major per node; `rule` must be the rule lambda
// was sampled on.
LinearizedSystem assemble(const GridFunction& lambda, const FractionalOrder& beta,
                          int modes, const QuadratureRulePtr& rule);

// Dense LU with partial pivoting. Throws SingularSystemError when the matrix
// is singular to working precision; raises a warning when the achieved
// residual exceeds 1e-9 relative.
SineCoefficients solve_linear(const LinearizedSystem& system,
                              LinearSolveInfo* info = nullptr,
                              std::vector<std::string>* warnings = nullptr);

// r(t) = synthesis of (-Delta)^beta x minus f(t, x(t), u(t)) on the rule's
// nodes, plus its quadrature L2 norm. This is the full-grid residual.
std::pair<GridFunction, double> residual(const ProblemSpec& spec,
                                         const SineCoefficients& x,
                                         const QuadratureRulePtr& rule);

// Damped Newton on the J-mode Galerkin system. The line search backtracks on
// the projected residual norm. Initial iterate: `initial` if given, else
// apply_inverse_fractional of the projection of f(t, 0, u(t)). beta <= 1/2
// proceeds with a warning (no uniqueness theory backs the result there).
std::pair<SineCoefficients, SolveReport> newton_solve(
    const ProblemSpec& spec, const NewtonConfig& config, int modes,
    const QuadratureRulePtr& rule, const SineCoefficients* initial = nullptr);

// Solves the linearized equation for y = (d/du) x_u applied to direction v:
// assemble(f_x at x_u) y = P_J [f_u(t, x_u, u) v(t)]. x_u should be a
// converged solution of the problem.
SineCoefficients sensitivity(const ProblemSpec& spec, const SineCoefficients& x_u,
                             const GridFunction& v, int modes,
                             const QuadratureRulePtr& rule,
                             LinearSolveInfo* info = nullptr,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace fracbvp

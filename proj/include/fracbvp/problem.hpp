#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fracbvp/expression.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/sine_basis.hpp"

namespace fracbvp {

// One boundary value problem instance: (-Delta)^beta x = f(t, x, u(t)) on
// (0, pi) with m state components and r parameter components. The parameter
// trajectory u and the optional growth majorant a are expressions in t alone.
struct ProblemSpec {
  ProblemSpec(FractionalOrder beta_, int m_, int r_, std::vector<Expression> f_,
              std::vector<Expression> u_,
              std::optional<Expression> growth_a_ = std::nullopt);

  FractionalOrder beta;
  int m;
  int r;
  std::vector<Expression> f;
  std::vector<Expression> u;
  std::optional<Expression> growth_a;
};

// f, f_x, f_u at one point. Row-major: fx[i*m + k] = d f_i / d x_k,
// fu[i*r + k] = d f_i / d u_k.
struct JacobianSample {
  std::vector<double> value;
  std::vector<double> fx;
  std::vector<double> fu;
};

// Forward dual passes: one per x and u direction, m + r in total.
JacobianSample eval_with_jacobian(const std::vector<Expression>& f, double t,
                                  std::span<const double> x,
                                  std::span<const double> u);
JacobianSample eval_with_jacobian(const ProblemSpec& spec, double t,
                                  std::span<const double> x,
                                  std::span<const double> u);

// u(t) at the rule's nodes, r components.
GridFunction sample_parameter(const ProblemSpec& spec, const QuadratureRulePtr& rule);

// f, f_x, f_u sampled at every node of x_grid's rule. f has m components,
// jac_x has m*m (row-major), jac_u has m*r.
struct NodalProblemData {
  GridFunction f;
  GridFunction jac_x;
  GridFunction jac_u;
};
NodalProblemData sample_problem(const ProblemSpec& spec, const GridFunction& x_grid,
                                const GridFunction& u_grid);

// Values of f only; the cheap path for residual evaluations inside line
// searches.
GridFunction sample_values(const ProblemSpec& spec, const GridFunction& x_grid,
                           const GridFunction& u_grid);

}  // namespace fracbvp

#include "fracbvp/problem.hpp"

#include <stdexcept>
#include <string>

namespace fracbvp {

ProblemSpec::ProblemSpec(FractionalOrder beta_, int m_, int r_,
                         std::vector<Expression> f_, std::vector<Expression> u_,
                         std::optional<Expression> growth_a_)
    : beta(beta_), m(m_), r(r_), f(std::move(f_)), u(std::move(u_)),
      growth_a(std::move(growth_a_)) {
  if (m < 1 || r < 1) {
    throw std::invalid_argument("ProblemSpec: m and r must be >= 1");
  }
  if (f.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("ProblemSpec: expected " + std::to_string(m) +
                                " right-hand-side expressions");
  }
  if (u.size() != static_cast<std::size_t>(r)) {
    throw std::invalid_argument("ProblemSpec: expected " + std::to_string(r) +
                                " parameter expressions");
  }
  for (const Expression& e : f) {
    if (e.max_x_index() > m || e.max_u_index() > r) {
      throw std::invalid_argument("ProblemSpec: expression variable out of range");
    }
  }
  for (const Expression& e : u) {
    if (e.max_x_index() != 0 || e.max_u_index() != 0) {
      throw std::invalid_argument(
          "ProblemSpec: parameter expressions must depend on t only");
    }
  }
  if (growth_a && (growth_a->max_x_index() != 0 || growth_a->max_u_index() != 0)) {
    throw std::invalid_argument(
        "ProblemSpec: the growth bound must depend on t only");
  }
}

JacobianSample eval_with_jacobian(const std::vector<Expression>& f, double t,
                                  std::span<const double> x,
                                  std::span<const double> u) {
  const int m = static_cast<int>(f.size());
  const int nx = static_cast<int>(x.size());
  const int nu = static_cast<int>(u.size());
  JacobianSample out;
  out.value.assign(m, 0.0);
  out.fx.assign(static_cast<std::size_t>(m) * nx, 0.0);
  out.fu.assign(static_cast<std::size_t>(m) * nu, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < nx; ++k) {
      double v = 0.0;
      out.fx[static_cast<std::size_t>(i) * nx + k] =
          f[i].eval_derivative(t, x, u, k, &v);
      out.value[i] = v;  // every pass recomputes the same value
    }
    for (int k = 0; k < nu; ++k) {
      double v = 0.0;
      out.fu[static_cast<std::size_t>(i) * nu + k] =
          f[i].eval_derivative(t, x, u, nx + k, &v);
      out.value[i] = v;
    }
  }
  return out;
}

JacobianSample eval_with_jacobian(const ProblemSpec& spec, double t,
                                  std::span<const double> x,
                                  std::span<const double> u) {
  if (x.size() != static_cast<std::size_t>(spec.m) ||
      u.size() != static_cast<std::size_t>(spec.r)) {
    throw std::invalid_argument("eval_with_jacobian: x or u has wrong size");
  }
  return eval_with_jacobian(spec.f, t, x, u);
}

GridFunction sample_parameter(const ProblemSpec& spec, const QuadratureRulePtr& rule) {
  GridFunction g(rule, spec.r);
  const std::span<const double> none;
  for (int q = 0; q < rule->size(); ++q) {
    const double t = rule->nodes()[q];
    for (int i = 0; i < spec.r; ++i) {
      g.at(q, i) = spec.u[i].eval(t, none, none);
    }
  }
  return g;
}

namespace {

void check_grids(const ProblemSpec& spec, const GridFunction& x_grid,
                 const GridFunction& u_grid, const char* who) {
  if (x_grid.rule() != u_grid.rule()) {
    throw std::invalid_argument(std::string(who) + ": x and u use different rules");
  }
  if (x_grid.components() != spec.m || u_grid.components() != spec.r) {
    throw std::invalid_argument(std::string(who) + ": component mismatch");
  }
}

}  // namespace

NodalProblemData sample_problem(const ProblemSpec& spec, const GridFunction& x_grid,
                                const GridFunction& u_grid) {
  check_grids(spec, x_grid, u_grid, "sample_problem");
  const QuadratureRulePtr& rule = x_grid.rule();
  const int m = spec.m;
  const int r = spec.r;
  NodalProblemData out{GridFunction(rule, m), GridFunction(rule, m * m),
                       GridFunction(rule, m * r)};
  for (int q = 0; q < rule->size(); ++q) {
    const double t = rule->nodes()[q];
    const std::span<const double> x(&x_grid.values()[static_cast<std::size_t>(q) * m], m);
    const std::span<const double> u(&u_grid.values()[static_cast<std::size_t>(q) * r], r);
    const JacobianSample s = eval_with_jacobian(spec.f, t, x, u);
    for (int i = 0; i < m; ++i) out.f.at(q, i) = s.value[i];
    for (int k = 0; k < m * m; ++k) out.jac_x.at(q, k) = s.fx[k];
    for (int k = 0; k < m * r; ++k) out.jac_u.at(q, k) = s.fu[k];
  }
  return out;
}

GridFunction sample_values(const ProblemSpec& spec, const GridFunction& x_grid,
                           const GridFunction& u_grid) {
  check_grids(spec, x_grid, u_grid, "sample_values");
  const QuadratureRulePtr& rule = x_grid.rule();
  const int m = spec.m;
  const int r = spec.r;
  GridFunction out(rule, m);
  for (int q = 0; q < rule->size(); ++q) {
    const double t = rule->nodes()[q];
    const std::span<const double> x(&x_grid.values()[static_cast<std::size_t>(q) * m], m);
    const std::span<const double> u(&u_grid.values()[static_cast<std::size_t>(q) * r], r);
    for (int i = 0; i < m; ++i) {
      out.at(q, i) = spec.f[i].eval(t, x, u);
    }
  }
  return out;
}

}  // namespace fracbvp

#include "fracbvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracbvp/errors.hpp"

namespace fracbvp {

namespace {

// P(j, q) = sqrt(2/pi) sin((j+1) t_q) sqrt(w_q); then
// M^{(i,l)} = P diag(Lambda_{i,l}) P^T reproduces the Galerkin quadrature sum.
Eigen::MatrixXd weighted_sine_matrix(int modes, const QuadratureRule& rule) {
  const int q_count = rule.size();
  Eigen::MatrixXd p(modes, q_count);
  const double scale = std::sqrt(2.0 / std::numbers::pi);
  for (int q = 0; q < q_count; ++q) {
    const double t = rule.nodes()[q];
    const double sw = std::sqrt(rule.weights()[q]);
    for (int j = 0; j < modes; ++j) {
      p(j, q) = scale * std::sin((j + 1) * t) * sw;
    }
  }
  return p;
}

void validate_config(const NewtonConfig& c) {
  if (c.max_iters < 1 || c.max_backtracks < 0 || !(c.residual_tol > 0.0) ||
      !(c.step_tol > 0.0) || !(c.damping > 0.0) || !(c.damping < 1.0)) {
    throw std::invalid_argument("NewtonConfig: invalid field values");
  }
}

void append_unique(std::vector<std::string>* into, const std::vector<std::string>& from) {
  for (const std::string& w : from) {
    if (std::find(into->begin(), into->end(), w) == into->end()) {
      into->push_back(w);
    }
  }
}

// Projected residual R_{(j,i)} = (j^2)^beta a_{j,i} - b_{j,i} where b is the
// J-mode projection of f along the current iterate.
struct DiscreteResidual {
  Eigen::VectorXd vec;
  double norm = 0.0;
};

DiscreteResidual discrete_residual(const ProblemSpec& spec, const SineCoefficients& x,
                                   const GridFunction& u_grid,
                                   const QuadratureRulePtr& rule,
                                   std::vector<std::string>* warnings) {
  const GridFunction x_grid = evaluate(x, rule);
  const GridFunction f_grid = sample_values(spec, x_grid, u_grid);
  const SineCoefficients b = project_to_sine(f_grid, x.modes(), warnings);
  const int m = x.components();
  DiscreteResidual r;
  r.vec.resize(static_cast<Eigen::Index>(x.modes()) * m);
  for (int j = 0; j < x.modes(); ++j) {
    const double lam = mode_eigenvalue(j + 1, spec.beta.value());
    for (int i = 0; i < m; ++i) {
      r.vec[static_cast<Eigen::Index>(j) * m + i] = lam * x.at(j, i) - b.at(j, i);
    }
  }
  r.norm = r.vec.norm();
  return r;
}

SineCoefficients axpy(const SineCoefficients& x, double s, const SineCoefficients& h) {
  SineCoefficients out = x;
  for (std::size_t k = 0; k < out.data().size(); ++k) {
    out.data()[k] += s * h.data()[k];
  }
  return out;
}

}  // namespace

LinearizedSystem assemble(const GridFunction& lambda, const FractionalOrder& beta,
                          int modes, const QuadratureRulePtr& rule) {
  if (lambda.rule() != rule) {
    throw std::invalid_argument("assemble: lambda was sampled on a different rule");
  }
  const int m2 = lambda.components();
  const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m2))));
  if (m * m != m2) {
    throw std::invalid_argument("assemble: lambda must carry m*m components");
  }
  if (modes < 1) throw std::invalid_argument("assemble: modes must be >= 1");

  const int q_count = rule->size();
  const Eigen::MatrixXd p = weighted_sine_matrix(modes, *rule);

  LinearizedSystem sys;
  sys.modes = modes;
  sys.components = m;
  sys.A.setZero(static_cast<Eigen::Index>(modes) * m, static_cast<Eigen::Index>(modes) * m);

  Eigen::RowVectorXd lam_row(q_count);
  Eigen::MatrixXd scaled(modes, q_count), block(modes, modes);
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < m; ++l) {
      for (int q = 0; q < q_count; ++q) {
        lam_row(q) = lambda.at(q, i * m + l);
      }
      scaled = p.array().rowwise() * lam_row.array();
      block.noalias() = scaled * p.transpose();
      for (int j = 0; j < modes; ++j) {
        for (int k = 0; k < modes; ++k) {
          sys.A(static_cast<Eigen::Index>(j) * m + i,
                static_cast<Eigen::Index>(k) * m + l) = -block(j, k);
        }
      }
    }
  }
  for (int j = 0; j < modes; ++j) {
    const double lam = mode_eigenvalue(j + 1, beta.value());
    for (int i = 0; i < m; ++i) {
      sys.A(static_cast<Eigen::Index>(j) * m + i,
            static_cast<Eigen::Index>(j) * m + i) += lam;
    }
  }
  return sys;
}

SineCoefficients solve_linear(const LinearizedSystem& system, LinearSolveInfo* info,
                              std::vector<std::string>* warnings) {
  const Eigen::Index n = system.A.rows();
  if (system.A.cols() != n || system.rhs.size() != n ||
      n != static_cast<Eigen::Index>(system.modes) * system.components) {
    throw std::invalid_argument("solve_linear: inconsistent system dimensions");
  }
  if (!system.A.allFinite() || !system.rhs.allFinite()) {
    throw std::invalid_argument("solve_linear: non-finite entries");
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.A);
  const double rc = lu.rcond();
  if (!(rc > 1e-14)) {
    throw SingularSystemError(
        "solve_linear: the linearized operator is singular to working precision "
        "(reciprocal condition estimate " +
        std::to_string(rc) +
        "); an eigenvalue of the fractional operator falls into the range of the "
        "multiplier, which every solvability condition (a: L1 smallness, b: "
        "nonpositive symmetric part, c: sup-norm below 1) rules out");
  }

  const Eigen::VectorXd h = lu.solve(system.rhs);
  const double res_inf = (system.A * h - system.rhs).lpNorm<Eigen::Infinity>();
  const double rhs_inf = system.rhs.lpNorm<Eigen::Infinity>();
  const bool warn = res_inf > 1e-9 * std::max(rhs_inf, 1e-300);
  if (warn && warnings != nullptr) {
    warnings->push_back(
        "solve_linear: linear residual " + std::to_string(res_inf) +
        " exceeds 1e-9 relative to the right-hand side; the factorization is "
        "likely ill-conditioned");
  }
  if (info != nullptr) {
    info->condition_estimate = 1.0 / rc;
    info->residual_inf = res_inf;
    info->residual_warning = warn;
  }

  std::vector<double> data(h.data(), h.data() + h.size());
  return SineCoefficients(system.modes, system.components, std::move(data));
}

std::pair<GridFunction, double> residual(const ProblemSpec& spec,
                                         const SineCoefficients& x,
                                         const QuadratureRulePtr& rule) {
  if (x.components() != spec.m) {
    throw std::invalid_argument("residual: x has wrong component count");
  }
  const GridFunction x_grid = evaluate(x, rule);
  const GridFunction u_grid = sample_parameter(spec, rule);
  const GridFunction f_grid = sample_values(spec, x_grid, u_grid);
  const GridFunction lx_grid = evaluate(apply_fractional(x, spec.beta), rule);

  GridFunction r(rule, spec.m);
  for (int q = 0; q < rule->size(); ++q) {
    for (int i = 0; i < spec.m; ++i) {
      r.at(q, i) = lx_grid.at(q, i) - f_grid.at(q, i);
    }
  }
  const double l2 = std::sqrt(std::max(0.0, integrate_inner(r, r)));
  return {std::move(r), l2};
}

std::pair<SineCoefficients, SolveReport> newton_solve(const ProblemSpec& spec,
                                                      const NewtonConfig& config,
                                                      int modes,
                                                      const QuadratureRulePtr& rule,
                                                      const SineCoefficients* initial) {
  validate_config(config);
  if (modes < 1) throw std::invalid_argument("newton_solve: modes must be >= 1");

  SolveReport report;
  std::vector<std::string> warnings;

  if (!(spec.beta.value() > 0.5)) {
    warnings.push_back(
        "newton_solve: beta <= 1/2 lies outside the uniqueness theory; the "
        "discrete system is still solved, but no existence/uniqueness result "
        "backs the answer");
  }

  const GridFunction u_grid = sample_parameter(spec, rule);

  SineCoefficients x(modes, spec.m);
  if (initial != nullptr) {
    if (initial->modes() != modes || initial->components() != spec.m) {
      throw std::invalid_argument("newton_solve: initial iterate has wrong shape");
    }
    x = *initial;
  } else {
    // f frozen at x = 0: exact for x-independent f, a cheap preview otherwise
    const GridFunction zero_grid(rule, spec.m);
    const GridFunction f0 = sample_values(spec, zero_grid, u_grid);
    const SineCoefficients b0 = project_to_sine(f0, modes, &warnings);
    x = apply_inverse_fractional(b0, spec.beta);
  }

  DiscreteResidual r = discrete_residual(spec, x, u_grid, rule, &warnings);
  report.residual_history.push_back(r.norm);

  double last_step = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool stalled = false;

  for (int k = 0;; ++k) {
    if (k >= 1 && (r.norm <= config.residual_tol || last_step <= config.step_tol)) {
      converged = true;
      break;
    }
    if (k >= config.max_iters || stalled) break;

    const GridFunction x_grid = evaluate(x, rule);
    const NodalProblemData nodal = sample_problem(spec, x_grid, u_grid);
    LinearizedSystem sys = assemble(nodal.jac_x, spec.beta, modes, rule);
    sys.rhs = -r.vec;

    LinearSolveInfo info;
    const SineCoefficients h = solve_linear(sys, &info, &warnings);
    report.condition_estimate = info.condition_estimate;
    const double h_tilde = norm_tilde(h, spec.beta);

    double s = 1.0;
    bool accepted = false;
    for (int bt = 0; bt <= config.max_backtracks; ++bt) {
      const SineCoefficients trial = axpy(x, s, h);
      DiscreteResidual rt = discrete_residual(spec, trial, u_grid, rule, &warnings);
      if (rt.norm <= r.norm) {
        x = trial;
        r = std::move(rt);
        last_step = s * h_tilde;
        accepted = true;
        break;
      }
      s *= config.damping;
    }

    if (!accepted) {
      warnings.push_back(
          "newton_solve: line search exhausted " +
          std::to_string(config.max_backtracks) +
          " backtracks at iteration " + std::to_string(k + 1) +
          " without residual decrease; keeping the previous iterate");
      stalled = true;
      continue;  // loop head decides convergence by the tolerances
    }

    report.iterations = k + 1;
    report.residual_history.push_back(r.norm);
  }

  if (!converged) {
    warnings.push_back("newton_solve: no convergence within " +
                       std::to_string(config.max_iters) + " iterations (residual " +
                       std::to_string(r.norm) + ")");
  }

  report.converged = converged;
  report.final_step_norm = std::isfinite(last_step) ? last_step : 0.0;
  report.final_grid_residual = residual(spec, x, rule).second;
  append_unique(&report.warnings, warnings);
  return {std::move(x), std::move(report)};
}

SineCoefficients sensitivity(const ProblemSpec& spec, const SineCoefficients& x_u,
                             const GridFunction& v, int modes,
                             const QuadratureRulePtr& rule, LinearSolveInfo* info,
                             std::vector<std::string>* warnings) {
  if (v.components() != spec.r) {
    throw std::invalid_argument("sensitivity: v must have r components");
  }
  if (v.rule() != rule) {
    throw std::invalid_argument("sensitivity: v was sampled on a different rule");
  }
  if (x_u.components() != spec.m) {
    throw std::invalid_argument("sensitivity: x has wrong component count");
  }

  const GridFunction x_grid = evaluate(x_u, rule);
  const GridFunction u_grid = sample_parameter(spec, rule);
  const NodalProblemData nodal = sample_problem(spec, x_grid, u_grid);

  GridFunction rhs_grid(rule, spec.m);
  for (int q = 0; q < rule->size(); ++q) {
    for (int i = 0; i < spec.m; ++i) {
      double acc = 0.0;
      for (int k = 0; k < spec.r; ++k) {
        acc += nodal.jac_u.at(q, i * spec.r + k) * v.at(q, k);
      }
      rhs_grid.at(q, i) = acc;
    }
  }

  LinearizedSystem sys = assemble(nodal.jac_x, spec.beta, modes, rule);
  const SineCoefficients b = project_to_sine(rhs_grid, modes, warnings);
  sys.rhs = Eigen::Map<const Eigen::VectorXd>(b.data().data(),
                                              static_cast<Eigen::Index>(b.data().size()));
  return solve_linear(sys, info, warnings);
}

}  // namespace fracbvp

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracbvp/conditions.hpp"
#include "fracbvp/errors.hpp"
#include "fracbvp/problem_file.hpp"
#include "fracbvp/result_io.hpp"
#include "fracbvp/solver.hpp"
#include "fracbvp/verify.hpp"

namespace {

using namespace fracbvp;

constexpr int kExitOk = 0;
constexpr int kExitFileError = 2;     // unreadable / malformed problem input
constexpr int kExitSolverError = 3;   // non-convergence, singular system, eval failure
constexpr int kExitDomainError = 4;   // condition checks outside their validity range

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string strip_extension(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path;
  }
  return path.substr(0, dot);
}

std::string output_prefix(const ProblemFile& pf, const std::string& file,
                          const std::string& override_path) {
  if (!override_path.empty()) {
    return override_path;
  }
  if (!pf.output.path.empty()) {
    return pf.output.path;
  }
  return strip_extension(file);
}

ReportContext make_context(const std::string& command, const ProblemFile& pf,
                           int modes) {
  ReportContext ctx;
  ctx.command = command;
  ctx.beta = pf.spec.beta.value();
  ctx.m = pf.spec.m;
  ctx.r = pf.spec.r;
  ctx.modes = modes;
  ctx.panels = pf.numerics.panels;
  ctx.order = pf.numerics.order;
  return ctx;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void print_conditions(const ConditionReport& c) {
  std::cout << "conditions: a " << (c.cond_a.holds ? "holds" : "fails") << " ("
            << fmt(c.cond_a.lhs) << " vs " << fmt(c.cond_a.threshold) << "), b "
            << (c.cond_b.holds ? "holds" : "fails") << " (max eig "
            << fmt(c.cond_b.max_symmetric_eigenvalue) << "), c "
            << (c.cond_c.holds ? "holds" : "fails") << " ("
            << fmt(c.cond_c.sup_frobenius) << " vs 1)";
  if (c.coercivity.has_value()) {
    std::cout << ", coercivity " << (c.coercivity->holds ? "holds" : "fails")
              << " (" << fmt(c.coercivity->lhs) << " vs 1)";
  }
  std::cout << "; any: " << (c.any_holds ? "yes" : "no") << "\n";
}

int cmd_solve(const std::string& file, int modes_override,
              const std::string& out_override, bool no_check) {
  Timer timer;
  ProblemFile pf = load_problem_file(file);
  const int modes = modes_override > 0 ? modes_override : pf.numerics.modes;
  const QuadratureRulePtr rule =
      gauss_legendre_composite(pf.numerics.panels, pf.numerics.order);
  auto [x, report] = newton_solve(pf.spec, pf.numerics.newton, modes, rule);
  if (!no_check) {
    report.condition_verdicts = check_conditions(pf.spec, x, rule);
  }

  const std::string prefix = output_prefix(pf, file, out_override);
  ReportContext ctx = make_context("solve", pf, modes);
  ctx.runtime_seconds = timer.seconds();
  write_samples(prefix + ".samples.tsv", x);
  write_coefficients(prefix + ".coeffs.tsv", x);
  write_report(prefix + ".report.json", ctx, report, &x);

  const double res = report.residual_history.empty()
                         ? 0.0
                         : report.residual_history.back();
  std::cout << "solve " << file << ": "
            << (report.converged ? "converged" : "DID NOT CONVERGE") << " in "
            << report.iterations << " iterations, projected residual "
            << fmt(res) << ", grid residual " << fmt(report.final_grid_residual)
            << "\n";
  if (report.condition_verdicts.has_value()) {
    print_conditions(*report.condition_verdicts);
  }
  for (const std::string& w : report.warnings) {
    std::cout << "warning: " << w << "\n";
  }
  std::cout << "wrote " << prefix << ".samples.tsv, " << prefix << ".coeffs.tsv, "
            << prefix << ".report.json\n";
  return report.converged ? kExitOk : kExitSolverError;
}

int cmd_apply(const std::string& file, bool inverse, int modes_override,
              const std::string& out_override) {
  Timer timer;
  ProblemFile pf = load_problem_file(file);
  const int modes = modes_override > 0 ? modes_override : pf.numerics.modes;
  const QuadratureRulePtr rule =
      gauss_legendre_composite(pf.numerics.panels, pf.numerics.order);

  // The data the operator acts on: f(t, 0, u(t)) projected onto the first
  // `modes` sine modes.
  const GridFunction zero(rule, pf.spec.m);
  const GridFunction u_grid = sample_parameter(pf.spec, rule);
  const GridFunction values = sample_values(pf.spec, zero, u_grid);
  SolveReport report;
  report.converged = true;
  const SineCoefficients b = project_to_sine(values, modes, &report.warnings);
  const SineCoefficients y = inverse ? apply_inverse_fractional(b, pf.spec.beta)
                                     : apply_fractional(b, pf.spec.beta);

  const std::string prefix = output_prefix(pf, file, out_override);
  ReportContext ctx =
      make_context(inverse ? "apply --inverse" : "apply", pf, modes);
  ctx.runtime_seconds = timer.seconds();
  write_samples(prefix + ".samples.tsv", y);
  write_coefficients(prefix + ".coeffs.tsv", y);
  write_report(prefix + ".report.json", ctx, report, &y);

  std::cout << "apply " << file << (inverse ? " (inverse)" : "") << ": |result|_L2 "
            << fmt(norm_l2(y)) << "\n";
  for (const std::string& w : report.warnings) {
    std::cout << "warning: " << w << "\n";
  }
  std::cout << "wrote " << prefix << ".samples.tsv, " << prefix << ".coeffs.tsv, "
            << prefix << ".report.json\n";
  return kExitOk;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string::size_type begin = 0;
  while (true) {
    const auto comma = text.find(',', begin);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(begin));
      return parts;
    }
    parts.push_back(text.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

int cmd_sens(const std::string& file, const std::string& v_text, double fd_eps,
             int modes_override, const std::string& out_override) {
  Timer timer;
  ProblemFile pf = load_problem_file(file);
  const int modes = modes_override > 0 ? modes_override : pf.numerics.modes;
  const QuadratureRulePtr rule =
      gauss_legendre_composite(pf.numerics.panels, pf.numerics.order);

  const std::vector<std::string> parts = split_commas(v_text);
  if (parts.size() != static_cast<std::size_t>(pf.spec.r)) {
    throw std::runtime_error("--v needs exactly " + std::to_string(pf.spec.r) +
                             " comma-separated expressions, got " +
                             std::to_string(parts.size()));
  }
  std::vector<Expression> v;
  v.reserve(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    try {
      v.push_back(Expression::parse(parts[k], 0, 0));
    } catch (const ParseError& e) {
      throw std::runtime_error("--v entry " + std::to_string(k + 1) + ": " +
                               e.what());
    }
  }

  auto [x_u, report] = newton_solve(pf.spec, pf.numerics.newton, modes, rule);
  if (!report.converged) {
    std::cerr << "sens " << file << ": base solve did not converge\n";
    return kExitSolverError;
  }
  GridFunction v_grid(rule, pf.spec.r);
  for (int q = 0; q < rule->size(); ++q) {
    for (int k = 0; k < pf.spec.r; ++k) {
      v_grid.at(q, k) =
          v[static_cast<std::size_t>(k)].eval(rule->nodes()[q], {}, {});
    }
  }
  LinearSolveInfo info;
  SineCoefficients y = sensitivity(pf.spec, x_u, v_grid, modes, rule, &info,
                                   &report.warnings);
  report.condition_estimate = std::max(report.condition_estimate,
                                       info.condition_estimate);

  const std::string prefix = output_prefix(pf, file, out_override);
  write_samples(prefix + ".sens.tsv", y);
  write_coefficients(prefix + ".sens_coeffs.tsv", y);
  std::cout << "sens " << file << ": |dx|_L2 " << fmt(norm_l2(y)) << "\n";

  if (fd_eps > 0.0) {
    // Forward difference (x_{u + eps v} - x_u) / eps against the linearized
    // sensitivity, coefficient by coefficient.
    std::vector<Expression> shifted;
    shifted.reserve(pf.spec.u.size());
    for (std::size_t k = 0; k < pf.spec.u.size(); ++k) {
      shifted.push_back(Expression::shifted_by(pf.spec.u[k], v[k], fd_eps));
    }
    ProblemSpec spec_eps(pf.spec.beta, pf.spec.m, pf.spec.r, pf.spec.f, shifted,
                         pf.spec.growth_a);
    auto [x_eps, report_eps] =
        newton_solve(spec_eps, pf.numerics.newton, modes, rule, &x_u);
    if (!report_eps.converged) {
      std::cerr << "sens " << file << ": shifted solve did not converge\n";
      return kExitSolverError;
    }
    std::ofstream fd_out(prefix + ".fd.tsv");
    if (!fd_out) {
      throw std::runtime_error("cannot open '" + prefix + ".fd.tsv' for writing");
    }
    fd_out << "j\ti\tanalytic\tforward_difference\tabs_diff\n";
    double max_diff = 0.0;
    double max_scale = 0.0;
    for (int j = 1; j <= y.modes(); ++j) {
      for (int i = 1; i <= y.components(); ++i) {
        const double analytic = y.at(j - 1, i - 1);
        const double fd =
            (x_eps.at(j - 1, i - 1) - x_u.at(j - 1, i - 1)) / fd_eps;
        const double diff = std::abs(analytic - fd);
        max_diff = std::max(max_diff, diff);
        max_scale = std::max(max_scale, std::abs(analytic));
        char row[160];
        std::snprintf(row, sizeof(row), "%d\t%d\t%.17g\t%.17g\t%.17g\n", j, i,
                      analytic, fd, diff);
        fd_out << row;
      }
    }
    std::cout << "fd-check eps " << fmt(fd_eps) << ": max abs diff "
              << fmt(max_diff) << " (relative "
              << fmt(max_scale > 0.0 ? max_diff / max_scale : 0.0) << ")\n";
    std::cout << "wrote " << prefix << ".fd.tsv\n";
    for (const std::string& w : report_eps.warnings) {
      std::cout << "warning (shifted solve): " << w << "\n";
    }
  }

  ReportContext ctx = make_context("sens", pf, modes);
  ctx.runtime_seconds = timer.seconds();
  write_report(prefix + ".sens_report.json", ctx, report, &y);
  for (const std::string& w : report.warnings) {
    std::cout << "warning: " << w << "\n";
  }
  std::cout << "wrote " << prefix << ".sens.tsv, " << prefix
            << ".sens_coeffs.tsv, " << prefix << ".sens_report.json\n";
  return kExitOk;
}

int cmd_check(const std::string& file, const std::string& out_override) {
  Timer timer;
  ProblemFile pf = load_problem_file(file);
  const int modes = pf.numerics.modes;
  const QuadratureRulePtr rule =
      gauss_legendre_composite(pf.numerics.panels, pf.numerics.order);
  auto [x, report] = newton_solve(pf.spec, pf.numerics.newton, modes, rule);
  if (!report.converged) {
    std::cerr << "check " << file
              << ": solve did not converge; no trajectory to check\n";
    return kExitSolverError;
  }
  report.condition_verdicts = check_conditions(pf.spec, x, rule);

  const std::string prefix = output_prefix(pf, file, out_override);
  ReportContext ctx = make_context("check", pf, modes);
  ctx.runtime_seconds = timer.seconds();
  write_report(prefix + ".report.json", ctx, report, &x);
  print_conditions(*report.condition_verdicts);
  for (const std::string& w : report.warnings) {
    std::cout << "warning: " << w << "\n";
  }
  std::cout << "wrote " << prefix << ".report.json\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  const int failures = run_verify_suite(suite, std::cout);
  std::cout << "verify " << suite << ": "
            << (failures == 0 ? "all cases passed"
                              : std::to_string(failures) + " case(s) FAILED")
            << "\n";
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for (-Delta)^beta x = f(t, x, u) on (0, pi)"};
  app.require_subcommand(1);

  std::string file;
  std::string out_override;
  int modes_override = 0;
  bool no_check = false;
  bool inverse = false;
  std::string v_text;
  double fd_eps = 0.0;
  std::string suite;

  CLI::App* solve = app.add_subcommand("solve", "solve the boundary value problem");
  solve->add_option("file", file, "problem file")->required();
  solve->add_option("--modes", modes_override, "override the number of sine modes");
  solve->add_option("--out", out_override, "output path prefix");
  solve->add_flag("--no-check", no_check, "skip the solvability condition checks");

  CLI::App* apply = app.add_subcommand(
      "apply", "apply the fractional operator to the problem data f(t, 0, u)");
  apply->add_option("file", file, "problem file")->required();
  apply->add_flag("--inverse", inverse, "apply the inverse operator");
  apply->add_option("--modes", modes_override, "override the number of sine modes");
  apply->add_option("--out", out_override, "output path prefix");

  CLI::App* sens = app.add_subcommand(
      "sens", "parameter sensitivity of the solution in a direction v");
  sens->add_option("file", file, "problem file")->required();
  sens->add_option("--v", v_text, "comma-separated direction expressions in t")
      ->required();
  sens->add_option("--fd-check", fd_eps,
                   "also compare against a forward difference at this epsilon");
  sens->add_option("--modes", modes_override, "override the number of sine modes");
  sens->add_option("--out", out_override, "output path prefix");

  CLI::App* check = app.add_subcommand(
      "check", "solve and report the solvability conditions only");
  check->add_option("file", file, "problem file")->required();
  check->add_option("--out", out_override, "output path prefix");

  CLI::App* verify =
      app.add_subcommand("verify", "run a built-in verification suite");
  verify->add_option("suite", suite, "diagonal, example, or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFileError;
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(file, modes_override, out_override, no_check);
    }
    if (apply->parsed()) {
      return cmd_apply(file, inverse, modes_override, out_override);
    }
    if (sens->parsed()) {
      return cmd_sens(file, v_text, fd_eps, modes_override, out_override);
    }
    if (check->parsed()) {
      return cmd_check(file, out_override);
    }
    if (verify->parsed()) {
      return cmd_verify(suite);
    }
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const SingularSystemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFileError;
  }
  return kExitFileError;
}

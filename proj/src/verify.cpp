#include "fracbvp/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracbvp/conditions.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/solver.hpp"
#include "fracbvp/zeta.hpp"

namespace fracbvp {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

bool report_case(std::ostream& out, const std::string& label, bool ok,
                 const std::string& detail) {
  out << "  " << label << ": " << detail << (ok ? " .. ok" : " .. FAIL") << "\n";
  return ok;
}

// g = sin t + 0.5 sin 3t - 0.25 sin 8t, so b_j = c_j sqrt(pi/2) and the
// affine problem f = g - k x has the closed-form solution
// a_j = b_j / ((j^2)^beta + k).
int verify_diagonal(std::ostream& out) {
  out << "suite diagonal\n";
  const int modes = 32;
  const QuadratureRulePtr rule = gauss_legendre_composite(16, 12);
  const double root = std::sqrt(std::acos(-1.0) / 2.0);
  const std::vector<std::pair<int, double>> g_modes = {
      {1, 1.0}, {3, 0.5}, {8, -0.25}};
  int failures = 0;
  for (double beta_v : {0.75, 1.0}) {
    for (double k : {0.0, 0.3, 1.0}) {
      const std::string g_text = "sin(t) + 0.5*sin(3*t) - 0.25*sin(8*t)";
      const std::string f_text = g_text + " - " + fmt("%.17g", k) + "*x1";
      ProblemSpec spec(FractionalOrder(beta_v), 1, 1,
                       {Expression::parse(f_text, 1, 1)},
                       {Expression::parse("0", 0, 0)});
      auto [x, rep] = newton_solve(spec, NewtonConfig{}, modes, rule);
      double err = 0.0;
      for (int j = 1; j <= modes; ++j) {
        double expected = 0.0;
        for (const auto& [gj, c] : g_modes) {
          if (gj == j) {
            expected = c * root / (mode_eigenvalue(j, beta_v) + k);
          }
        }
        err = std::max(err, std::abs(x.at(j - 1, 0) - expected));
      }
      const bool ok = rep.converged && rep.iterations == 1 && err <= 1e-10;
      failures += report_case(
          out,
          "beta=" + fmt("%.2f", beta_v) + " k=" + fmt("%.1f", k),
          ok,
          "coeff err " + fmt("%.2e", err) + ", iterations " +
              std::to_string(rep.iterations) +
              (rep.converged ? "" : ", not converged"))
                      ? 0
                      : 1;
    }
  }
  // Two components with decoupled right-hand sides exercise the block
  // indexing of the assembled system.
  {
    ProblemSpec spec(FractionalOrder(1.0), 2, 1,
                     {Expression::parse("2*sin(2*t) - 0.3*x1", 2, 1),
                      Expression::parse("sin(t) + 0.5*sin(5*t) - 0.3*x2", 2, 1)},
                     {Expression::parse("0", 0, 0)});
    auto [x, rep] = newton_solve(spec, NewtonConfig{}, modes, rule);
    double err = 0.0;
    for (int j = 1; j <= modes; ++j) {
      double e1 = (j == 2) ? 2.0 * root / (mode_eigenvalue(2, 1.0) + 0.3) : 0.0;
      double e2 = 0.0;
      if (j == 1) e2 = root / (1.0 + 0.3);
      if (j == 5) e2 = 0.5 * root / (mode_eigenvalue(5, 1.0) + 0.3);
      err = std::max(err, std::abs(x.at(j - 1, 0) - e1));
      err = std::max(err, std::abs(x.at(j - 1, 1) - e2));
    }
    const bool ok = rep.converged && rep.iterations == 1 && err <= 1e-10;
    failures += report_case(out, "beta=1.00 k=0.3 m=2", ok,
                            "coeff err " + fmt("%.2e", err) + ", iterations " +
                                std::to_string(rep.iterations))
                    ? 0
                    : 1;
  }
  return failures;
}

ProblemSpec example_spec() {
  return ProblemSpec(FractionalOrder(1.0), 2, 2,
                     {Expression::parse("0.1*sin(x2) + t^(-1/3)*exp(u1)", 2, 2),
                      Expression::parse("0.1*cos(x1) + t*u2", 2, 2)},
                     {Expression::parse("0", 0, 0), Expression::parse("0", 0, 0)});
}

int verify_example(std::ostream& out) {
  out << "suite example\n";
  const int modes = 128;
  const QuadratureRulePtr rule = gauss_legendre_composite(64, 12);
  const ProblemSpec spec = example_spec();
  int failures = 0;

  auto [x, rep] = newton_solve(spec, NewtonConfig{}, modes, rule);
  const double res = rep.residual_history.empty()
                         ? std::numeric_limits<double>::infinity()
                         : rep.residual_history.back();
  failures += report_case(out, "solve", rep.converged && res <= 1e-10,
                          "projected residual " + fmt("%.2e", res) + ", " +
                              std::to_string(rep.iterations) + " iterations")
                  ? 0
                  : 1;

  // The problem's own solvability margin: the Jacobian norm never exceeds
  // sqrt(0.1^2 + 0.1^2), which stays below 1 / (2 sqrt(2) zeta(2)).
  const ConditionReport cond = check_conditions(spec, x, rule);
  const double margin = 1.0 / (2.0 * std::sqrt(2.0) * zeta(2.0).value);
  const double jac_sup = std::sqrt(0.02);
  const bool margin_ok = jac_sup < margin &&
                         cond.cond_c.sup_frobenius <= jac_sup + 1e-12 &&
                         cond.any_holds;
  failures += report_case(out, "hypothesis margin", margin_ok,
                          "sup |f_x| " + fmt("%.6f", cond.cond_c.sup_frobenius) +
                              " <= " + fmt("%.6f", jac_sup) + " < " +
                              fmt("%.6f", margin))
                  ? 0
                  : 1;

  // Operational uniqueness: a random start (normalized in the energy norm)
  // must land on the same coefficients.
  std::mt19937 gen(12345);
  std::normal_distribution<double> dist(0.0, 1.0);
  SineCoefficients start(modes, 2);
  for (double& a : start.data()) {
    a = dist(gen);
  }
  const double scale = norm_tilde(start, spec.beta);
  for (double& a : start.data()) {
    a /= scale;
  }
  auto [x2, rep2] = newton_solve(spec, NewtonConfig{}, modes, rule, &start);
  double dist2 = 0.0;
  for (std::size_t n = 0; n < x.data().size(); ++n) {
    const double d = x.data()[n] - x2.data()[n];
    dist2 += d * d;
  }
  const double distance = std::sqrt(dist2);
  failures += report_case(out, "multistart agreement",
                          rep2.converged && distance <= 1e-8,
                          "coefficient distance " + fmt("%.2e", distance))
                  ? 0
                  : 1;
  return failures;
}

}  // namespace

int run_verify_suite(const std::string& name, std::ostream& out) {
  if (name == "diagonal") {
    return verify_diagonal(out);
  }
  if (name == "example") {
    return verify_example(out);
  }
  if (name == "all") {
    return verify_diagonal(out) + verify_example(out);
  }
  throw std::invalid_argument("unknown verify suite '" + name +
                              "' (expected diagonal, example, or all)");
}

}  // namespace fracbvp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fracbvp/conditions.hpp"
#include "fracbvp/solver.hpp"
#include "fracbvp/zeta.hpp"

using namespace fracbvp;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec scalar_problem(double beta, const std::string& f_text,
                           const char* growth = nullptr) {
  std::optional<Expression> a;
  if (growth != nullptr) {
    a = Expression::parse(growth, 0, 0);
  }
  return ProblemSpec(FractionalOrder(beta), 1, 1,
                     {Expression::parse(f_text, 1, 1)},
                     {Expression::parse("0", 0, 0)}, std::move(a));
}

}  // namespace

TEST_CASE("x-independent data satisfies every condition") {
  const QuadratureRulePtr rule = gauss_legendre_composite(8, 8);
  const ProblemSpec spec = scalar_problem(1.0, "sin(t)");
  const ConditionReport rep = check_conditions(spec, SineCoefficients(8, 1), rule);
  CHECK(rep.cond_a.lhs == 0.0);
  CHECK(rep.cond_a.holds);
  CHECK(rep.cond_b.max_symmetric_eigenvalue == 0.0);
  CHECK(rep.cond_b.holds);
  CHECK(rep.cond_c.sup_frobenius == 0.0);
  CHECK(rep.cond_c.holds);
  CHECK(rep.any_holds);
  CHECK_FALSE(rep.coercivity.has_value());
}

TEST_CASE("threshold at beta = 1 is 3/pi") {
  const QuadratureRulePtr rule = gauss_legendre_composite(8, 8);
  const ProblemSpec spec = scalar_problem(1.0, "sin(t)");
  const ConditionReport rep = check_conditions(spec, SineCoefficients(8, 1), rule);
  // pi / (2 zeta(2)) = pi / (pi^2 / 3) = 3 / pi
  CHECK(std::abs(rep.cond_a.threshold - 3.0 / kPi) <= 1e-9);
  CHECK(rep.cond_a.threshold == doctest::Approx(0.954930).epsilon(1e-6));
}

TEST_CASE("thresholds grow with beta") {
  const QuadratureRulePtr rule = gauss_legendre_composite(8, 8);
  double previous = 0.0;
  for (double beta : {0.55, 0.7, 0.85, 1.0, 1.3, 1.7, 2.2}) {
    const ProblemSpec spec = scalar_problem(beta, "sin(t)");
    const ConditionReport rep =
        check_conditions(spec, SineCoefficients(8, 1), rule);
    CHECK(rep.cond_a.threshold > previous);
    previous = rep.cond_a.threshold;
  }
  // zeta(2 beta) -> 1 from above, so the thresholds approach pi/2.
  CHECK(previous < kPi / 2.0);
}

TEST_CASE("two-component example problem at x = 0") {
  // f1 = 0.1 sin(x2) + data, f2 = 0.1 cos(x1) + data. At x = 0 the Jacobian
  // is [[0, 0.1], [0, 0]]: Frobenius norm 0.1, symmetric part eigenvalues
  // +-0.05.
  const QuadratureRulePtr rule = gauss_legendre_composite(16, 8);
  ProblemSpec spec(FractionalOrder(1.0), 2, 2,
                   {Expression::parse("0.1*sin(x2) + t^(-1/3)*exp(u1)", 2, 2),
                    Expression::parse("0.1*cos(x1) + t*u2", 2, 2)},
                   {Expression::parse("0", 0, 0), Expression::parse("0", 0, 0)});
  const ConditionReport rep = check_conditions(spec, SineCoefficients(16, 2), rule);
  CHECK(rep.cond_c.sup_frobenius == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rep.cond_a.lhs == doctest::Approx(0.1 * kPi).epsilon(1e-12));
  CHECK(rep.cond_a.holds);
  CHECK(rep.cond_b.max_symmetric_eigenvalue == doctest::Approx(0.05).epsilon(1e-12));
  CHECK_FALSE(rep.cond_b.holds);
  CHECK(rep.cond_c.holds);
  CHECK(rep.any_holds);
  // The problem's margin from the bundled example: sqrt(a^2+b^2) stays below
  // 1/(2 sqrt(2) zeta(2)).
  const double bound = 1.0 / (2.0 * std::sqrt(2.0) * zeta(2.0).value);
  CHECK(std::sqrt(0.02) == doctest::Approx(0.14142).epsilon(1e-4));
  CHECK(bound == doctest::Approx(0.21492).epsilon(1e-4));
  CHECK(std::sqrt(0.02) < bound);
}

TEST_CASE("all conditions can fail together") {
  const QuadratureRulePtr rule = gauss_legendre_composite(8, 8);
  const ProblemSpec spec = scalar_problem(1.0, "sin(t) + 1.5*x1");
  const ConditionReport rep = check_conditions(spec, SineCoefficients(8, 1), rule);
  CHECK_FALSE(rep.cond_a.holds);
  CHECK_FALSE(rep.cond_b.holds);
  CHECK_FALSE(rep.cond_c.holds);
  CHECK_FALSE(rep.any_holds);
}

TEST_CASE("condition b tracks the sign of a scalar multiplier") {
  const QuadratureRulePtr rule = gauss_legendre_composite(8, 8);
  for (double k : {0.25, 1.0}) {
    char minus[48];
    std::snprintf(minus, sizeof minus, "sin(t) - %.2f*x1", k);
    const ConditionReport neg = check_conditions(
        scalar_problem(1.0, minus), SineCoefficients(8, 1), rule);
    CHECK(neg.cond_b.holds);
    CHECK(neg.cond_b.max_symmetric_eigenvalue == doctest::Approx(-k).epsilon(1e-13));

    char plus[48];
    std::snprintf(plus, sizeof plus, "sin(t) + %.2f*x1", k);
    const ConditionReport pos = check_conditions(
        scalar_problem(1.0, plus), SineCoefficients(8, 1), rule);
    CHECK_FALSE(pos.cond_b.holds);
    CHECK(pos.cond_b.max_symmetric_eigenvalue == doctest::Approx(k).epsilon(1e-13));
  }
}

TEST_CASE("beta at or below one half is out of range") {
  const QuadratureRulePtr rule = gauss_legendre_composite(8, 8);
  for (double beta : {0.5, 0.3}) {
    const ProblemSpec spec = scalar_problem(beta, "sin(t)");
    CHECK_THROWS_AS(check_conditions(spec, SineCoefficients(8, 1), rule),
                    std::domain_error);
  }
  try {
    check_conditions(scalar_problem(0.3, "sin(t)"), SineCoefficients(8, 1), rule);
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("beta > 1/2") != std::string::npos);
  }
}

TEST_CASE("coercivity check uses the supplied growth majorant") {
  const QuadratureRulePtr rule = gauss_legendre_composite(16, 8);
  {
    const ProblemSpec spec = scalar_problem(1.0, "sin(t)", "0.25");
    const ConditionReport rep =
        check_conditions(spec, SineCoefficients(8, 1), rule);
    REQUIRE(rep.coercivity.has_value());
    // |a|_L2 = 0.25 sqrt(pi); constant is sqrt(2/pi * zeta(4)).
    const double expected =
        std::sqrt(2.0 / kPi * zeta(4.0).value) * 0.25 * std::sqrt(kPi);
    CHECK(rep.coercivity->lhs == doctest::Approx(expected).epsilon(1e-12));
    CHECK(rep.coercivity->holds);
  }
  {
    // Large majorant: the inequality honestly fails.
    const ProblemSpec spec = scalar_problem(1.0, "sin(t)", "2");
    const ConditionReport rep =
        check_conditions(spec, SineCoefficients(8, 1), rule);
    REQUIRE(rep.coercivity.has_value());
    CHECK_FALSE(rep.coercivity->holds);
  }
  {
    const ProblemSpec spec = scalar_problem(1.0, "sin(t)", "-1");
    CHECK_THROWS_AS(check_conditions(spec, SineCoefficients(8, 1), rule),
                    std::domain_error);
  }
}

TEST_CASE("condition c implies a discrete coercivity floor") {
  const QuadratureRulePtr rule = gauss_legendre_composite(16, 8);
  // Symmetric multiplier with sup Frobenius norm < 1.
  const int m = 2;
  const GridFunction lam = sample(rule, m * m, [](double t, std::span<double> out) {
    out[0] = 0.5 * std::sin(t);
    out[1] = 0.25 * std::cos(t);
    out[2] = 0.25 * std::cos(t);
    out[3] = -0.35 * std::sin(2.0 * t);
  });
  double sup_f = 0.0;
  for (int q = 0; q < rule->size(); ++q) {
    double s = 0.0;
    for (int c = 0; c < m * m; ++c) s += lam.at(q, c) * lam.at(q, c);
    sup_f = std::max(sup_f, std::sqrt(s));
  }
  REQUIRE(sup_f < 1.0);
  const double beta = 0.8;
  const LinearizedSystem sys = assemble(lam, FractionalOrder(beta), 12, rule);
  const Eigen::MatrixXd sym = 0.5 * (sys.A + sys.A.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  CHECK(es.eigenvalues().minCoeff() >=
        (1.0 - sup_f) * mode_eigenvalue(1, beta) - 1e-9);
}

TEST_CASE("shift compactness: zero data") {
  const auto [lhs, bound] = shift_compactness_test(SineCoefficients(8, 1),
                                                   FractionalOrder(1.0), 0.1);
  CHECK(lhs == 0.0);
  CHECK(bound == 0.0);
}

TEST_CASE("shift compactness: first mode against the closed form") {
  // g = e_{1,1} and beta = 1 give x_g = sqrt(2/pi) sin t. The shifted-overlap
  // integral has the closed form
  //   (2/pi) [ h - sin(2h)/2 + 2 sin^2(h/2) (pi - h - sin h) ]
  // (two boundary strips plus the sum-to-product middle piece).
  const double h = 0.1;
  const SineCoefficients g = SineCoefficients::unit(8, 1, 0, 0);
  const auto [lhs, bound] = shift_compactness_test(g, FractionalOrder(1.0), h);
  const double exact =
      (2.0 / kPi) * (h - std::sin(2.0 * h) / 2.0 +
                     2.0 * std::pow(std::sin(h / 2.0), 2) * (kPi - h - std::sin(h)));
  CHECK(lhs == doctest::Approx(exact).epsilon(1e-10));
  CHECK(lhs <= bound);
}

TEST_CASE("shift compactness: random sweep stays under the bound") {
  std::mt19937 gen(42);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (double beta : {0.75, 1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      SineCoefficients g(16, 2);
      for (double& a : g.data()) a = dist(gen);
      double previous = std::numeric_limits<double>::infinity();
      for (double h : {0.2, 0.1, 0.05}) {
        const auto [lhs, bound] =
            shift_compactness_test(g, FractionalOrder(beta), h);
        CHECK(lhs <= bound);
        CHECK(lhs <= previous * (1 + 1e-12));
        previous = lhs;
      }
    }
  }
}

TEST_CASE("shift compactness domain guards") {
  const SineCoefficients g = SineCoefficients::unit(4, 1, 0, 0);
  CHECK_THROWS_AS(shift_compactness_test(g, FractionalOrder(0.5), 0.1),
                  std::domain_error);
  CHECK_THROWS_AS(shift_compactness_test(g, FractionalOrder(1.0), 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(shift_compactness_test(g, FractionalOrder(1.0), kPi),
                  std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fracbvp/quadrature.hpp"
#include "fracbvp/sine_basis.hpp"

using namespace fracbvp;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("weights sum to pi and nodes are interior ascending") {
  for (auto [panels, order] : {std::pair{1, 2}, {8, 8}, {64, 12}, {5, 32}}) {
    CAPTURE(panels);
    CAPTURE(order);
    auto rule = gauss_legendre_composite(panels, order);
    double sum = 0.0;
    for (double w : rule->weights()) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::fabs(sum - kPi) <= 1e-14 * kPi);
    double prev = 0.0;
    for (double t : rule->nodes()) {
      CHECK(t > prev);
      CHECK(t < kPi);
      prev = t;
    }
    CHECK(rule->size() == panels * order);
  }
}

TEST_CASE("polynomial exactness up to degree 2*order - 1") {
  // single panel so panel subdivision cannot mask a bad reference rule
  auto rule = gauss_legendre_composite(1, 5);
  auto g = sample(rule, 1, [](double t, std::span<double> out) {
    out[0] = std::pow(t, 9.0);
  });
  // integral of t^9 over (0, pi) = pi^10 / 10
  CHECK(integrate(g) == doctest::Approx(9364.80474760830209737167).epsilon(1e-14));

  // degree 2*order is NOT integrated exactly: detects an off-by-one rule
  auto g10 = sample(rule, 1, [](double t, std::span<double> out) {
    out[0] = std::pow(t, 10.0);
  });
  const double exact10 = std::pow(kPi, 11.0) / 11.0;
  CHECK(std::fabs(integrate(g10) - exact10) > 1e-9 * exact10);
}

TEST_CASE("normalized sine square integrates to one") {
  auto rule = gauss_legendre_composite(8, 8);
  auto g = sample(rule, 1, [](double t, std::span<double> out) {
    const double s = std::sin(t);
    out[0] = 2.0 / kPi * s * s;
  });
  CHECK(integrate(g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("endpoint singularity: interior nodes keep the error algebraic") {
  // integral of t^{-1/3} over (0, pi) = (3/2) pi^{2/3}
  const double exact = 3.217544095666538400116166;
  double prev_err = 0.0;
  int step = 0;
  for (int panels : {64, 128, 256}) {
    auto rule = gauss_legendre_composite(panels, 12);
    auto g = sample(rule, 1, [](double t, std::span<double> out) {
      out[0] = std::pow(t, -1.0 / 3.0);
    });
    const double err = std::fabs(integrate(g) - exact);
    CHECK(std::isfinite(err));
    if (step == 0) {
      CHECK(err <= 2.5e-3);
    } else {
      // algebraic rate h^{2/3}: doubling panels divides the error by ~2^{2/3}
      const double ratio = prev_err / err;
      CHECK(ratio >= 1.4);
      CHECK(ratio <= 1.8);
    }
    prev_err = err;
    ++step;
  }
}

TEST_CASE("projection of the constant function") {
  auto rule = gauss_legendre_composite(64, 12);
  auto g = sample(rule, 1, [](double, std::span<double> out) { out[0] = 1.0; });
  auto b = project_to_sine(g, 3);
  // b_j = sqrt(2/pi) (1 - cos(j pi)) / j
  CHECK(b.at(0, 0) == doctest::Approx(1.595769121605730711759784).epsilon(1e-10));
  CHECK(std::fabs(b.at(1, 0)) <= 1e-10);
  CHECK(b.at(2, 0) == doctest::Approx(0.5319230405352435705865948).epsilon(1e-10));
}

TEST_CASE("project then evaluate round-trips band-limited data") {
  auto rule = gauss_legendre_composite(64, 12);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SineCoefficients x(32, 2);
  for (double& v : x.data()) v = u(rng);

  auto g = evaluate(x, rule);
  std::vector<std::string> warnings;
  auto back = project_to_sine(g, 32, &warnings);
  CHECK(warnings.empty());
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 2; ++i) {
      CHECK(std::fabs(back.at(j, i) - x.at(j, i)) <= 1e-12);
    }
  }
}

TEST_CASE("discrete orthonormality within the resolvable band") {
  auto rule = gauss_legendre_composite(16, 12);  // resolves ~48 modes
  const int band = rule->resolvable_modes();
  CHECK(band == 48);
  for (int j : {1, 7, 30, 48}) {
    auto e = evaluate(SineCoefficients::unit(band, 1, j - 1, 0), rule);
    auto b = project_to_sine(e, band);
    for (int k = 1; k <= band; ++k) {
      const double want = (k == j) ? 1.0 : 0.0;
      // quadrature error is governed by the product frequency j + k, which
      // tops out at 2*band = panels*order/2, i.e. ~4 nodes per period; the
      // tolerance grades to rounding level as j + k falls
      const int freq = j + k;
      const double tol = (freq >= 2 * band) ? 1e-6
                         : (freq >= (5 * band) / 4 ? 1e-9 : 1e-12);
      CHECK(std::fabs(b.at(k - 1, 0) - want) <= tol);
    }
  }
}

TEST_CASE("aliasing warning fires exactly when requested modes exceed the band") {
  auto rule = gauss_legendre_composite(4, 8);  // resolves 8 modes
  auto g = sample(rule, 1, [](double t, std::span<double> out) {
    out[0] = std::sin(t);
  });
  std::vector<std::string> warnings;
  project_to_sine(g, 8, &warnings);
  CHECK(warnings.empty());
  project_to_sine(g, 9, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("alias") != std::string::npos);
}

TEST_CASE("inner product of t against sin t") {
  auto rule = gauss_legendre_composite(64, 12);
  auto f = sample(rule, 1, [](double t, std::span<double> out) { out[0] = t; });
  auto g = sample(rule, 1, [](double t, std::span<double> out) {
    out[0] = std::sin(t);
  });
  CHECK(integrate_inner(f, g) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("inner product sums over components") {
  auto rule = gauss_legendre_composite(32, 8);
  auto f = sample(rule, 2, [](double t, std::span<double> out) {
    out[0] = std::sin(t);
    out[1] = std::cos(t);
  });
  // |f|^2 integrates to pi
  CHECK(integrate_inner(f, f) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(gauss_legendre_composite(0, 8), std::domain_error);
  CHECK_THROWS_AS(gauss_legendre_composite(4, 1), std::domain_error);
  CHECK_THROWS_AS(gauss_legendre_composite(4, 33), std::domain_error);

  auto r1 = gauss_legendre_composite(8, 8);
  auto r2 = gauss_legendre_composite(8, 8);  // equal parameters, distinct object
  auto f = sample(r1, 1, [](double, std::span<double> out) { out[0] = 1.0; });
  auto g = sample(r2, 1, [](double, std::span<double> out) { out[0] = 1.0; });
  CHECK_THROWS_AS(integrate_inner(f, g), std::invalid_argument);

  auto h = sample(r1, 2, [](double, std::span<double> out) {
    out[0] = 1.0;
    out[1] = 1.0;
  });
  CHECK_THROWS_AS(integrate_inner(f, h), std::invalid_argument);
  CHECK_THROWS_AS(integrate(h), std::invalid_argument);
  CHECK_THROWS_AS(project_to_sine(f, 0), std::domain_error);
}

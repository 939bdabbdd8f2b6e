#include "fracbvp/sine_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracbvp/zeta.hpp"

namespace fracbvp {

FractionalOrder::FractionalOrder(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("FractionalOrder: beta must be positive and finite");
  }
}

double mode_eigenvalue(int mode, double beta) {
  // exp(2 beta ln j) instead of pow(j*j, beta): one rounding, and immune to
  // j*j overflow for large mode counts.
  if (mode == 1) return 1.0;
  return std::exp(2.0 * beta * std::log(static_cast<double>(mode)));
}

namespace {

void check_shape(int modes, int components) {
  if (modes < 1 || components < 1) {
    throw std::invalid_argument("SineCoefficients: modes and components must be >= 1");
  }
}

void check_finite(const std::vector<double>& data) {
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("SineCoefficients: entries must be finite");
    }
  }
}

}  // namespace

SineCoefficients::SineCoefficients(int modes, int components)
    : modes_(modes), components_(components) {
  check_shape(modes, components);
  data_.assign(static_cast<std::size_t>(modes) * components, 0.0);
}

SineCoefficients::SineCoefficients(int modes, int components, std::vector<double> data)
    : modes_(modes), components_(components), data_(std::move(data)) {
  check_shape(modes, components);
  if (data_.size() != static_cast<std::size_t>(modes) * components) {
    throw std::invalid_argument("SineCoefficients: data size does not match shape");
  }
  check_finite(data_);
}

SineCoefficients SineCoefficients::unit(int modes, int components, int mode,
                                        int component) {
  SineCoefficients out(modes, components);
  out.at(mode, component) = 1.0;
  return out;
}

namespace {

SineCoefficients scale_by_eigenvalues(const SineCoefficients& x, double exponent_beta) {
  SineCoefficients out(x.modes(), x.components());
  for (int j = 0; j < x.modes(); ++j) {
    const double lambda = mode_eigenvalue(j + 1, exponent_beta);
    for (int i = 0; i < x.components(); ++i) {
      out.at(j, i) = lambda * x.at(j, i);
    }
  }
  return out;
}

}  // namespace

SineCoefficients apply_fractional(const SineCoefficients& x, const FractionalOrder& order) {
  return scale_by_eigenvalues(x, order.value());
}

SineCoefficients apply_inverse_fractional(const SineCoefficients& x,
                                          const FractionalOrder& order) {
  return scale_by_eigenvalues(x, -order.value());
}

double half_power_identity_check(const SineCoefficients& x, const FractionalOrder& order) {
  const FractionalOrder half(order.value() / 2.0);
  const SineCoefficients once = apply_fractional(x, order);
  const SineCoefficients twice = apply_fractional(apply_fractional(x, half), half);
  double max_diff = 0.0;
  for (std::size_t k = 0; k < once.data().size(); ++k) {
    max_diff = std::max(max_diff, std::fabs(once.data()[k] - twice.data()[k]));
  }
  return max_diff;
}

double norm_l2(const SineCoefficients& x) {
  double s = 0.0;
  for (double v : x.data()) s += v * v;
  return std::sqrt(s);
}

double norm_tilde(const SineCoefficients& x, const FractionalOrder& order) {
  double s = 0.0;
  for (int j = 0; j < x.modes(); ++j) {
    const double lambda = mode_eigenvalue(j + 1, order.value());
    for (int i = 0; i < x.components(); ++i) {
      const double w = lambda * x.at(j, i);
      s += w * w;
    }
  }
  return std::sqrt(s);
}

double sup_bound(const SineCoefficients& x, const FractionalOrder& order) {
  const double beta = order.value();
  if (!(beta > 0.25)) {
    throw std::domain_error("sup_bound: requires beta > 1/4 (zeta(4 beta) must converge)");
  }
  const double z = zeta(4.0 * beta).value;
  return std::sqrt(2.0 / std::numbers::pi * z) * norm_tilde(x, order);
}

double lipschitz_constant(const FractionalOrder& order) {
  const double beta = order.value();
  if (!(beta > 0.75)) {
    throw std::domain_error(
        "lipschitz_constant: requires beta > 3/4 (zeta(4 beta - 2) must converge)");
  }
  return std::sqrt(2.0 / std::numbers::pi * zeta(4.0 * beta - 2.0).value);
}

void evaluate_at(const SineCoefficients& x, double t, std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(x.components())) {
    throw std::invalid_argument("evaluate_at: output span has wrong size");
  }
  const double scale = std::sqrt(2.0 / std::numbers::pi);
  for (auto& v : out) v = 0.0;
  for (int j = 0; j < x.modes(); ++j) {
    const double s = scale * std::sin((j + 1) * t);
    for (int i = 0; i < x.components(); ++i) {
      out[i] += s * x.at(j, i);
    }
  }
}

}  // namespace fracbvp

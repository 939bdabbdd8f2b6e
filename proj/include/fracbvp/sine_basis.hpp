#pragma once

#include <span>
#include <vector>

namespace fracbvp {

// Exponent beta > 0 of the fractional operator. Values beta <= 1/2 are legal
// here; entry points that need more (sup bounds, solver hypotheses) enforce
// their own thresholds.
class FractionalOrder {
public:
  explicit FractionalOrder(double beta);
  double value() const noexcept { return beta_; }

private:
  double beta_;
};

// Eigenvalue (j^2)^beta of the operator on sine mode j >= 1.
double mode_eigenvalue(int mode, double beta);

// Coefficients a_{j,i} of an R^m-valued function on (0, pi) in the orthonormal
// basis sqrt(2/pi) sin(j t) per component. Storage is mode-major: entry
// (mode j, component i) lives at index (j-1)*components + (i-1) with 1-based
// j, i in the formulas and 0-based indices in the API.
class SineCoefficients {
public:
  SineCoefficients(int modes, int components);
  SineCoefficients(int modes, int components, std::vector<double> data);

  // Unit vector for one basis element; mode/component are 0-based here.
  static SineCoefficients unit(int modes, int components, int mode, int component);

  int modes() const noexcept { return modes_; }
  int components() const noexcept { return components_; }

  double at(int mode, int component) const {
    return data_[static_cast<std::size_t>(mode) * components_ + component];
  }
  double& at(int mode, int component) {
    return data_[static_cast<std::size_t>(mode) * components_ + component];
  }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

private:
  int modes_;
  int components_;
  std::vector<double> data_;
};

// Diagonal action a_{j,i} -> (j^2)^{+-beta} a_{j,i}.
SineCoefficients apply_fractional(const SineCoefficients& x, const FractionalOrder& order);
SineCoefficients apply_inverse_fractional(const SineCoefficients& x, const FractionalOrder& order);

// Max abs coefficient difference between applying order beta once and order
// beta/2 twice. Zero in exact arithmetic.
double half_power_identity_check(const SineCoefficients& x, const FractionalOrder& order);

// Parseval norm: sqrt(sum a_{j,i}^2).
double norm_l2(const SineCoefficients& x);

// Energy norm: sqrt(sum (j^2)^{2 beta} a_{j,i}^2).
double norm_tilde(const SineCoefficients& x, const FractionalOrder& order);

// Uniform bound sqrt(2/pi * zeta(4 beta)) * |x|_tilde; requires beta > 1/4.
double sup_bound(const SineCoefficients& x, const FractionalOrder& order);

// Constant C with |x(t1) - x(t2)| <= C |t1 - t2| |x|_tilde; requires beta > 3/4.
double lipschitz_constant(const FractionalOrder& order);

// Pointwise synthesis sum_j a_{j,i} sqrt(2/pi) sin(j t) into out[i];
// out.size() must equal components().
void evaluate_at(const SineCoefficients& x, double t, std::span<double> out);

}  // namespace fracbvp

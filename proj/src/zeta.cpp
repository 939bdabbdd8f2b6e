#include "fracbvp/zeta.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbvp {
namespace {

// B_2, B_4, ..., B_14. Seven correction terms bound the remainder by the
// magnitude of the first omitted term for real s > 0.
constexpr double kBernoulli[] = {
    1.0 / 6.0,     -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
};
constexpr int kTerms = 6;  // correction terms actually summed; the 7th is the bound

// T_k = B_{2k}/(2k)! * (s)(s+1)...(s+2k-2) * N^{-(s+2k-1)}, computed
// incrementally: each step multiplies by B-ratio, 1/((2k-1)(2k)), the two new
// Pochhammer factors, and N^{-2}.
double correction_sum(double s, double n, double* first_omitted) {
  const double inv_n2 = 1.0 / (n * n);
  // k = 1 term: B_2/2! * s * N^{-s-1}
  double factor = std::pow(n, -s - 1.0) * s / 2.0;
  double sum = kBernoulli[0] * factor;
  for (int k = 2; k <= kTerms + 1; ++k) {
    const int two_k = 2 * k;
    factor *= (s + two_k - 3.0) * (s + two_k - 2.0) * inv_n2 /
              (two_k * (two_k - 1.0));
    const double term = kBernoulli[k - 1] * factor;
    if (k == kTerms + 1) {
      *first_omitted = std::fabs(term);
      return sum;
    }
    sum += term;
  }
  return sum;  // unreachable
}

}  // namespace

ZetaValue zeta(double s) {
  if (!(s > 1.0)) {
    throw std::domain_error("zeta: requires s > 1");
  }

  int n = 16;
  for (;;) {
    double partial = 0.0;
    for (int j = n - 1; j >= 1; --j) {  // ascending magnitude
      partial += std::pow(static_cast<double>(j), -s);
    }
    const double nd = static_cast<double>(n);
    const double tail_integral = std::pow(nd, 1.0 - s) / (s - 1.0);
    const double half_term = 0.5 * std::pow(nd, -s);

    double omitted = 0.0;
    const double correction = correction_sum(s, nd, &omitted);

    if (omitted <= 1e-13 || n >= 4096) {
      return ZetaValue{s, partial + tail_integral + half_term + correction,
                       omitted};
    }
    n *= 2;
  }
}

}  // namespace fracbvp

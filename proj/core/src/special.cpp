#include "wdbc/special.hpp"

#include <cmath>

#include "wdbc/errors.hpp"

namespace wdbc {

namespace {
constexpr double kShift = 10.0;
constexpr double kHalfLog2Pi = 0.9189385332046727;  // ln(2*pi)/2
}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: x must be > 0");
  double acc = 0.0;
  while (x < kShift) {
    acc -= 1.0 / x;  // psi(x) = psi(x+1) - 1/x
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_2n / (2n x^2n)
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = -1.0 / 12.0;
  double p = inv2;
  double sum = series * p;
  p *= inv2;
  sum += (1.0 / 120.0) * p;
  p *= inv2;
  sum += (-1.0 / 252.0) * p;
  p *= inv2;
  sum += (1.0 / 240.0) * p;
  p *= inv2;
  sum += (-1.0 / 132.0) * p;
  p *= inv2;
  sum += (691.0 / 32760.0) * p;
  return acc + std::log(x) - 0.5 * inv + sum;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: x must be > 0");
  double acc = 0.0;
  while (x < kShift) {
    acc -= std::log(x);  // lnGamma(x) = lnGamma(x+1) - ln x
    x += 1.0;
  }
  // Stirling: lnGamma(x) ~ (x-1/2) ln x - x + ln(2*pi)/2 + sum B_2n/(2n(2n-1) x^(2n-1))
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double p = inv;
  double sum = (1.0 / 12.0) * p;
  p *= inv2;
  sum += (-1.0 / 360.0) * p;
  p *= inv2;
  sum += (1.0 / 1260.0) * p;
  p *= inv2;
  sum += (-1.0 / 1680.0) * p;
  p *= inv2;
  sum += (1.0 / 1188.0) * p;
  return acc + (x - 0.5) * std::log(x) - x + kHalfLog2Pi + sum;
}

}  // namespace wdbc

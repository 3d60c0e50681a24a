#pragma once

#include <cmath>

#include "latomo/common.hpp"

namespace latomo {
namespace detail {

/// Ascending series sum_k (-q)^k / (k! (k+nu)!) * (x/2)^nu, q = x^2/4.
/// Usable for |x| < ~16 before cancellation costs more than ~4 digits.
inline double bessel_series(double x, int nu) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  for (int j = 1; j <= nu; ++j) term *= 0.5 * x / j;
  double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-300) break;
  }
  return sum;
}

}  // namespace detail

namespace detail {

/// Hankel asymptotics for x >= 16: J_nu ~ sqrt(2/(pi x)) (cos(w) P - sin(w) Q),
/// w = x - nu pi/2 - pi/4, with A_k = A_{k-1} (4 nu^2 - (2k-1)^2)/(8k),
/// P = sum (-1)^j A_{2j} x^{-2j}, Q = sum (-1)^j A_{2j+1} x^{-2j-1},
/// truncated where the terms stop shrinking.
inline double bessel_asymptotic(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, q = 0.0;
  double a = 1.0, power = 1.0, prev = 1e300;
  for (int k = 0; k < 24; ++k) {
    const double term = a * power;
    if (std::fabs(term) >= prev) break;
    prev = std::fabs(term);
    const int j = k / 2;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (prev < 1e-18) break;
    a *= (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1));
    power /= x;
  }
  const double w = x - 0.5 * nu * kPi - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (std::cos(w) * p - std::sin(w) * q);
}

}  // namespace detail

inline double bessel_j0(double x) {
  const double ax = std::fabs(x);
  return ax < 16.0 ? detail::bessel_series(ax, 0) : detail::bessel_asymptotic(ax, 0);
}

/// Odd in x.
inline double bessel_j1(double x) {
  const double ax = std::fabs(x);
  const double r =
      ax < 16.0 ? detail::bessel_series(ax, 1) : detail::bessel_asymptotic(ax, 1);
  return x < 0.0 ? -r : r;
}

/// J1(x)/x with the removable singularity filled in (limit 1/2 at 0).
inline double jinc1(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-6) return 0.5 - x * x / 16.0;
  return bessel_j1(ax) / ax;
}

/// Modified Bessel I0 by its everywhere-convergent series (all terms
/// positive, no cancellation).
inline double bessel_i0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace latomo

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "latomo/fft.hpp"
#include "latomo/quadrature.hpp"
#include "latomo/special.hpp"

using namespace latomo;

namespace {

// Integral representation J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt.
// The integrand is even and periodic over [-pi, pi], so the midpoint
// rule converges geometrically once the oscillation is resolved.
double bessel_oracle(int n, double x) {
  const int steps = 16384;
  const double h = kPi / steps;
  double acc = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double t = (i + 0.5) * h;
    acc += std::cos(n * t - x * std::sin(t));
  }
  return acc * h / kPi;
}

}  // namespace

TEST_CASE("fft matches a naive dft") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 64;
  std::vector<std::complex<double>> a(n);
  for (auto& v : a) v = {u(rng), u(rng)};

  auto fft = a;
  fft_pow2(fft, -1);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> ref(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -kTwoPi * static_cast<double>(k * j) / n;
      ref += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    CHECK(std::abs(fft[k] - ref) < 1e-11);
  }

  ifft_pow2(fft);
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(fft[j] - a[j]) < 1e-13);
}

TEST_CASE("fft rejects non power-of-two lengths") {
  std::vector<std::complex<double>> a(48);
  CHECK_THROWS_AS(fft_pow2(a, -1), ValidationError);
}

TEST_CASE("bessel j0/j1 against the integral representation") {
  for (double x : {0.05, 0.7, 3.0, 9.5, 15.9, 16.1, 40.0, 120.0, 402.0, 803.0}) {
    const double envelope = std::sqrt(2.0 / (kPi * std::max(x, 1.0)));
    CHECK(std::fabs(bessel_j0(x) - bessel_oracle(0, x)) < 2e-10 * std::max(envelope, 1e-2));
    CHECK(std::fabs(bessel_j1(x) - bessel_oracle(1, x)) < 2e-10 * std::max(envelope, 1e-2));
  }
  CHECK(bessel_j1(-2.5) == -bessel_j1(2.5));
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
}

TEST_CASE("jinc1 limit at zero") {
  CHECK(jinc1(0.0) == doctest::Approx(0.5));
  CHECK(jinc1(1e-9) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(jinc1(2.0) == doctest::Approx(bessel_j1(2.0) / 2.0));
}

TEST_CASE("adaptive quadrature on an oscillatory integrand") {
  const double omega = 317.0;
  auto f = [&](double u) {
    return std::complex<double>(std::cos(omega * u), std::sin(omega * u));
  };
  const std::complex<double> got = integrate_adaptive(f, 0.0, 1.0, 1e-10, 64);
  const std::complex<double> want =
      (std::complex<double>(std::cos(omega), std::sin(omega)) - 1.0) /
      std::complex<double>(0.0, omega);
  CHECK(std::abs(got - want) < 1e-10);
}

TEST_CASE("adaptive quadrature reports non-convergence") {
  auto f = [](double u) { return std::complex<double>(std::cos(5000.0 * u), 0.0); };
  CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 1e-12, 1, 4), QuadratureError);
}

TEST_CASE("low-pass taper") {
  CHECK(lowpass_taper(10.0, 128.0, 0.25) == 1.0);
  CHECK(lowpass_taper(96.0, 128.0, 0.25) == 1.0);
  CHECK(lowpass_taper(112.0, 128.0, 0.25) == doctest::Approx(0.5));
  CHECK(lowpass_taper(128.0, 128.0, 0.25) == 0.0);
  CHECK(lowpass_taper(200.0, 128.0, 0.25) == 0.0);
  CHECK(lowpass_taper(5.0, 0.0, 0.25) == 1.0);
}

TEST_CASE("line fit recovers an exact line") {
  std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y;
  for (double v : x) y.push_back(-1.5 * v + 0.25);
  const LineFit fit = fit_line(x.begin(), x.end(), y.begin());
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fit.rms_residual < 1e-12);
}

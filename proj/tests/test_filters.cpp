#include <cmath>
#include <vector>

#include "doctest.h"
#include "latomo/apodization.hpp"
#include "latomo/filters.hpp"

using namespace latomo;

TEST_CASE("lambda filter of a constant row matches the rectangular-pulse field") {
  // a constant row is a rectangular pulse once zero-padded; its exact
  // transform is (1/pi) (1/(s-a) - 1/(s-b)) for the pulse on [a, b]
  const int n = 512;
  const double ds = 0.01;
  const double level = 3.7;
  std::vector<double> row(n, level);
  const auto out = filter_lambda(row, ds);
  const double a = -0.5 * ds, b = (n - 0.5) * ds;
  const double period = 2.0 * 1024 * ds;  // padded length
  double worst = 0.0;
  for (int i = n / 3; i < 2 * n / 3; ++i) {
    const double s = i * ds;
    double want = 0.0;
    for (int img = -3; img <= 3; ++img) {  // the DFT sees the periodized pulse
      want += level / kPi * (1.0 / (s - a - img * period) - 1.0 / (s - b - img * period));
    }
    worst = std::max(worst, std::fabs(out[i] - want));
  }
  CHECK(worst < 0.05 * level);
}

TEST_CASE("lambda filter multiplies cosines by |omega|") {
  const int n = 1024;
  const double ds = 0.01;
  const double freq = 5.0;  // cycles per unit, far below Nyquist (50)
  const double omega = kTwoPi * freq;
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) row[i] = std::cos(omega * (i * ds));
  const auto out = filter_lambda(row, ds);
  for (int i = n / 3; i < 2 * n / 3; ++i) {
    CHECK(out[i] == doctest::Approx(omega * row[i]).epsilon(0.01).scale(omega));
  }
}

TEST_CASE("lambda of a gaussian at the center") {
  // 1-D quadrature oracle for (1/sqrt(2 pi)) int |tau| exp(-tau^2/2) dtau
  double oracle = 0.0;
  const int steps = 200000;
  const double h = 40.0 / steps;
  for (int i = 0; i < steps; ++i) {
    const double tau = -20.0 + (i + 0.5) * h;
    oracle += std::fabs(tau) * std::exp(-0.5 * tau * tau);
  }
  oracle *= h / std::sqrt(kTwoPi);
  CHECK(oracle == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-7));

  const int n = 4096;
  const double ds = 40.0 / n;
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    const double s = (i - n / 2) * ds;
    row[i] = std::exp(-0.5 * s * s);
  }
  const auto out = filter_lambda(row, ds);
  CHECK(out[n / 2] == doctest::Approx(0.79788).epsilon(1e-3 / 0.8));
  CHECK(out[n / 2] == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("second-derivative filter") {
  const int n = 1024;
  const double ds = 0.005;
  const double omega = kTwoPi * 8.0;
  // polynomial rows are rolled off to zero near the row ends; the
  // spectral filter acts on the zero-padded row, so a jump at the pad
  // boundary would otherwise leak everywhere under tau^2
  auto rolloff = [&](int i) {
    const double x = (i - 0.5 * (n - 1)) / (0.5 * (n - 1));
    const double edge = std::fabs(x);
    if (edge < 0.5) return 1.0;
    return 0.5 * (1.0 + std::cos(kPi * (edge - 0.5) / 0.5));
  };
  std::vector<double> cosine(n), affine(n), parabola(n);
  for (int i = 0; i < n; ++i) {
    const double s = i * ds;
    cosine[i] = std::cos(omega * s);
    affine[i] = (0.3 + 1.7 * s) * rolloff(i);
    parabola[i] = 0.5 * s * s * rolloff(i);
  }
  const auto oc = filter_d2(cosine, ds);
  for (int i = n / 3; i < 2 * n / 3; ++i) {
    CHECK(oc[i] == doctest::Approx(omega * omega * cosine[i]).epsilon(0.01).scale(omega * omega));
  }
  const auto oa = filter_d2(affine, ds);
  const auto op = filter_d2(parabola, ds);
  for (int i = 2 * n / 5; i < 3 * n / 5; ++i) {
    CHECK(std::fabs(oa[i]) < 0.05);
    CHECK(op[i] == doctest::Approx(-1.0).epsilon(0.01));
  }
}

TEST_CASE("filters are linear and consistent") {
  const int n = 512;
  const double ds = 0.02;
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    const double s = i * ds;
    a[i] = std::sin(kTwoPi * 3.0 * s);
    b[i] = std::cos(kTwoPi * 7.0 * s) + 0.2;
  }
  std::vector<double> sum(n);
  for (int i = 0; i < n; ++i) sum[i] = a[i] + b[i];
  const auto fa = filter_lambda(a, ds), fb = filter_lambda(b, ds), fs = filter_lambda(sum, ds);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(fs[i]));
  for (int i = 0; i < n; ++i) CHECK(std::fabs(fs[i] - fa[i] - fb[i]) <= 1e-10 * scale);

  // tau^2 = |tau| * |tau| on band-limited input
  const auto twice = filter_lambda(filter_lambda(b, ds), ds);
  const auto direct = filter_d2(b, ds);
  double dscale = 0.0;
  for (int i = 0; i < n; ++i) dscale = std::max(dscale, std::fabs(direct[i]));
  for (int i = n / 4; i < 3 * n / 4; ++i) {
    CHECK(std::fabs(twice[i] - direct[i]) <= 0.01 * dscale);
  }
}

TEST_CASE("filter input validation") {
  std::vector<double> bad(64, 0.0);
  bad[10] = std::nan("");
  CHECK_THROWS_AS(filter_lambda(bad, 0.1), ValidationError);
  CHECK_THROWS_AS(filter_lambda(std::vector<double>(8, 1.0), 0.1), ValidationError);
  CHECK_THROWS_AS(filter_lambda(std::vector<double>(64, 1.0), 0.0), ValidationError);
}

TEST_CASE("kappa family") {
  const Apodization k0{kPi / 4.0, 0};
  CHECK(kappa_eval(k0, 0.0) == 1.0);
  CHECK(kappa_eval(k0, 0.5) == 1.0);
  CHECK(kappa_eval(k0, kPi / 4.0) == 1.0);
  CHECK(kappa_eval(k0, 1.0) == 0.0);  // outside the wedge

  const Apodization k2{kPi / 4.0, 2};
  CHECK(kappa_eval(k2, 0.0) == doctest::Approx(1.0));
  CHECK(kappa_eval(k2, kPi / 4.0) == 0.0);
  CHECK(kappa_eval(k2, 0.3) > 0.0);

  CHECK_THROWS_AS(kappa_eval(Apodization{2.0, 0}, 0.0), ValidationError);
  CHECK_THROWS_AS(kappa_eval(Apodization{kPi / 4.0, -1}, 0.0), ValidationError);
}

TEST_CASE("kappa edge derivative against finite differences") {
  CHECK(kappa_edge_derivative(Apodization{kPi / 4.0, 0}) == 1.0);
  CHECK(kappa_edge_derivative(Apodization{kPi / 4.0, 1}) == doctest::Approx(-2.0));
  CHECK(kappa_edge_derivative(Apodization{kPi / 4.0, 2}) == doctest::Approx(8.0));

  // one-sided backward difference oracle at the edge
  for (int k = 1; k <= 3; ++k) {
    for (double phi : {kPi / 4.0, kPi / 6.0, 1.1}) {
      const Apodization apod{phi, k};
      const double h = 2e-4;
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) {
        double binom = 1.0;
        for (int t = 0; t < j; ++t) binom = binom * (k - t) / (t + 1);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * kappa_eval(apod, phi - j * h);
      }
      const double fd = acc / std::pow(h, k);
      CHECK(kappa_edge_derivative(apod) == doctest::Approx(fd).epsilon(0.02));
    }
  }
}

#include <cmath>
#include <complex>
#include <sstream>

#include "doctest.h"
#include "latomo/probe.hpp"

using namespace latomo;

namespace {

ReconSpec probe_spec(int m, double phi, int k) {
  ReconSpec s;
  s.m = m;
  s.apod = Apodization{phi, k};
  s.cutoff = 128.0;
  return s;
}

}  // namespace

TEST_CASE("edge frames") {
  const double phi = kPi / 4.0;
  const EdgeFrame f1 = make_edge_frame(1, phi);
  const EdgeFrame f2 = make_edge_frame(2, phi);
  CHECK(f1.e.x == doctest::Approx(std::cos(phi)));
  CHECK(f1.e.y == doctest::Approx(std::sin(phi)));
  CHECK(f2.e.y == doctest::Approx(-std::sin(phi)));
  CHECK(f1.e.dot(f1.e_perp) == doctest::Approx(0.0));
  CHECK(f1.e_perp.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_edge_frame(3, phi), ValidationError);
}

TEST_CASE("multiplier values") {
  const ReconSpec s00 = probe_spec(0, kPi / 4.0, 0);
  CHECK(multiplier({1.0, 0.0}, s00) == 1.0);
  CHECK(multiplier({0.0, 1.0}, s00) == 0.0);
  CHECK(multiplier({-3.0, 0.1}, s00) == 1.0);  // antipodal wedge half

  const ReconSpec s11 = probe_spec(1, kPi / 4.0, 1);
  const EdgeFrame f1 = make_edge_frame(1, kPi / 4.0);
  CHECK(multiplier(f1.e * 2.0, s11) == 0.0);
  CHECK(multiplier({2.0, 0.0}, s11) == doctest::Approx(2.0));
  CHECK_THROWS_AS(multiplier({0.0, 0.0}, s00), ValidationError);
}

TEST_CASE("partial symbol orientation pinned by the hard-localizer closed form") {
  // with kappa == 1, m = 0, and the full wedge, the frame-1 integral is
  //   tau_ang * int_0^{tan(2 phi)} exp(i t tau_ang u) du
  //   = (exp(i t tau_ang tan(2 phi)) - 1) / (i t);
  // checked here with a plain Simpson oracle of the same parametrization
  const double phi = kPi / 6.0;
  const double t = 0.8, tau = 12.0;
  const double tau_ang = kTwoPi * tau;
  const double span = std::tan(2.0 * phi);
  const int steps = 200000;
  std::complex<double> simpson(0.0, 0.0);
  for (int i = 0; i <= steps; ++i) {
    const double u = span * i / steps;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double ph = t * tau_ang * u;
    simpson += w * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  simpson *= tau_ang * (span / steps) / 3.0;
  const std::complex<double> it(0.0, t);
  const std::complex<double> closed =
      (std::exp(std::complex<double>(0.0, t * tau_ang * span)) - 1.0) / it;
  CHECK(std::abs(simpson - closed) < 1e-9 * std::abs(closed));

  // the smooth localizer removes the oscillatory far-edge term and
  // leaves the non-oscillatory part -1/(i t) at large tau
  const ReconSpec spec = probe_spec(0, phi, 0);
  const EdgeFrame f1 = make_edge_frame(1, phi);
  const std::complex<double> a = partial_symbol(f1, t, 64.0, spec, phi / 2.0);
  const std::complex<double> want = -1.0 / it;
  CHECK(std::abs(a - want) < 2e-3 * std::abs(want));
}

TEST_CASE("predicted symbol examples") {
  const ReconSpec s00 = probe_spec(0, kPi / 4.0, 0);
  const EdgeFrame f1 = make_edge_frame(1, kPi / 4.0);
  const EdgeFrame f2 = make_edge_frame(2, kPi / 4.0);

  // leading term with psi(0) = 1 and unit offset: magnitude 1, phase -pi/2
  const auto p2 = predicted_symbol(f2, 1.0, 20.0, s00);
  CHECK(std::abs(p2) == doctest::Approx(1.0));
  CHECK(std::arg(p2) == doctest::Approx(-kPi / 2.0));
  const auto p1 = predicted_symbol(f1, 1.0, 20.0, s00);
  CHECK(std::abs(p1) == doctest::Approx(1.0));
  CHECK(p1 == std::conj(p2));

  CHECK(std::abs(predicted_sigma0(f1, 1.0, 20.0, s00)) ==
        doctest::Approx(1.0 / std::sqrt(kTwoPi)));

  // doubling t with k = 1 quarters the magnitude
  const ReconSpec s01 = probe_spec(0, kPi / 4.0, 1);
  CHECK(std::abs(predicted_symbol(f1, 2.0, 20.0, s01)) ==
        doctest::Approx(std::abs(predicted_symbol(f1, 1.0, 20.0, s01)) / 4.0));
}

TEST_CASE("partial symbol symmetries are exact") {
  const ReconSpec spec = probe_spec(1, kPi / 4.0, 1);
  const EdgeFrame f1 = make_edge_frame(1, kPi / 4.0);
  const EdgeFrame f2 = make_edge_frame(2, kPi / 4.0);
  for (double tau : {16.0, 40.0}) {
    const auto a = partial_symbol(f1, 0.7, tau, spec, kPi / 8.0);
    const auto conj_t = partial_symbol(f1, -0.7, tau, spec, kPi / 8.0);
    const auto mirrored = partial_symbol(f2, 0.7, tau, spec, kPi / 8.0);
    CHECK(conj_t.real() == a.real());
    CHECK(conj_t.imag() == -a.imag());
    CHECK(mirrored.real() == a.real());
    CHECK(mirrored.imag() == -a.imag());
  }
}

TEST_CASE("ratio scan matches the predicted order") {
  const double phi = kPi / 4.0;
  const EdgeFrame f1 = make_edge_frame(1, phi);
  struct Case {
    int m, k;
    double slope;
  };
  for (const Case c : {Case{0, 0, 0.0}, Case{1, 1, 0.0}, Case{0, 1, -1.0}}) {
    const ReconSpec spec = probe_spec(c.m, phi, c.k);
    // order fit on a decade clear of the localizer's spectral knee
    const auto probes = symbol_ratio_scan(f1, {0.5}, 40.0, 400.0, 9, spec, phi / 2.0);
    REQUIRE(probes.size() == 1);
    CHECK(std::fabs(probes[0].slope - c.slope) <= 0.1);
    CHECK(probes[0].mean_abs_ratio_err < 0.05);
    CHECK(probes[0].expected_slope == c.m - c.k);
  }

  // ratio statistics window [cutoff/8, cutoff/2] at cutoff 128
  for (double t : {0.5, 1.0}) {
    const ReconSpec spec = probe_spec(1, phi, 1);
    const auto scan = symbol_ratio_scan(f1, {t}, 16.0, 160.0, 17, spec, phi / 2.0);
    double sum = 0.0;
    int cnt = 0;
    for (std::size_t i = 0; i < scan[0].tau_grid.size(); ++i) {
      if (scan[0].tau_grid[i] <= 64.0 * (1.0 + 1e-9)) {
        sum += std::abs(scan[0].computed[i] / scan[0].predicted[i] - 1.0);
        ++cnt;
      }
    }
    CHECK(sum / cnt < 0.1);
  }
}

TEST_CASE("off-diagonal offset law") {
  const double phi = kPi / 4.0;
  const EdgeFrame f1 = make_edge_frame(1, phi);
  const ReconSpec spec = probe_spec(0, phi, 1);
  double lo = 1e300, hi = 0.0;
  for (double t : {0.25, 0.5, 1.0}) {
    const double v = std::abs(partial_symbol(f1, t, 64.0, spec, phi / 2.0)) * t * t;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo < 1.10);
}

TEST_CASE("probe validation and csv output") {
  const ReconSpec spec = probe_spec(0, kPi / 4.0, 0);
  const EdgeFrame f1 = make_edge_frame(1, kPi / 4.0);
  CHECK_THROWS_AS(partial_symbol(f1, 0.0, 10.0, spec, 0.3), ValidationError);
  CHECK_THROWS_AS(partial_symbol(f1, 1.0, -1.0, spec, 0.3), ValidationError);
  CHECK_THROWS_AS(partial_symbol(f1, 1.0, 10.0, spec, 2.0), ValidationError);
  CHECK_THROWS_AS(symbol_ratio_scan(f1, {1.0}, 8.0, 40.0, 8, spec, 0.3), ValidationError);

  const auto probes = symbol_ratio_scan(f1, {0.5, 1.0}, 4.0, 40.0, 5, spec, 0.3);
  std::ostringstream csv;
  write_probe_csv(csv, probes);
  const std::string text = csv.str();
  CHECK(text.substr(0, 40) == "j,t,tau,re_A,im_A,re_P,im_P,abs_ratio\n1,");
  int lines = 0;
  for (char ch : text) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == 1 + 2 * 5);
}

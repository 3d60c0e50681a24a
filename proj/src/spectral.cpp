#include "latomo/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "latomo/fft.hpp"
#include "latomo/special.hpp"

namespace latomo {

std::complex<double> ellipse_fourier(const Ellipse& e, Vec2 xi) {
  const double c = std::cos(e.tilt), sn = std::sin(e.tilt);
  const double qx = e.a * (c * xi.x + sn * xi.y);
  const double qy = e.b * (-sn * xi.x + c * xi.y);
  const double q = std::hypot(qx, qy);
  const double mag = e.density * e.a * e.b * jinc1(q);
  const double ph = -e.center.dot(xi);
  return {mag * std::cos(ph), mag * std::sin(ph)};
}

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr double kGlNodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                0.9602898564975363};
constexpr double kGlWeights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                  0.1012285362903763};

/// Radial cosine transform h(v) = int_0^R w(r) cos(r v) dr sampled on a
/// uniform v-grid via one FFT, with the leading Euler-Maclaurin
/// end corrections split off analytically (w(R), w'(R) vanish whenever
/// the band-limit taper is active, w(0) = 0 always).
struct RadialTable {
  std::vector<double> h;   // h at v = k * dv, k = 0 .. size-1
  double dv = 0.0;
  double em_w1_0 = 0.0;    // w'(0)
  double em_w_R = 0.0;     // w(R)
  double em_w1_R = 0.0;    // w'(R)
  double dr = 0.0;
  double r_max = 0.0;

  double eval(double v) const {
    const double av = std::fabs(v);
    const double f = av / dv;
    const long k = static_cast<long>(f);
    // 6-point Lagrange interpolation, even reflection at v = 0
    const long base = k - 2;
    double num = 0.0;
    const double t = f - base;
    static constexpr double denom[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
    double prod = 1.0;
    for (int i = 0; i < 6; ++i) prod *= (t - i);
    if (prod == 0.0) {
      long idx = std::labs(base + static_cast<long>(std::lround(t)));
      return table_at(idx) + correction(av);
    }
    for (int i = 0; i < 6; ++i) {
      const long idx = std::labs(base + i);
      num += table_at(idx) / denom[i] * (prod / (t - i));
    }
    return num + correction(av);
  }

  double table_at(long idx) const {
    return idx < static_cast<long>(h.size()) ? h[idx] : 0.0;
  }

  double correction(double v) const {
    // trapezoid error: -(dr^2/12) (g'(R) - g'(0)), g(r) = w(r) cos(r v)
    const double gp0 = em_w1_0;
    const double gpR = em_w1_R * std::cos(r_max * v) - em_w_R * v * std::sin(r_max * v);
    return -(dr * dr / 12.0) * (gpR - gp0);
  }
};

RadialTable build_radial_table(double r_max, double axis_radius, int m, double cutoff,
                               double rolloff) {
  const std::size_t n_r = next_pow2(static_cast<std::size_t>(
      std::max(1024.0, std::ceil(r_max / 0.1))));
  const std::size_t n_fft = 32 * n_r;
  const double dr = r_max / static_cast<double>(n_r);

  auto w_of = [&](double r) {
    const double taper = lowpass_taper(r / kTwoPi, cutoff, rolloff);
    const double pw = m == 0 ? 1.0 : r;
    return pw * taper * bessel_j1(r * axis_radius) / axis_radius;
  };

  std::vector<std::complex<double>> buf(n_fft, {0.0, 0.0});
  for (std::size_t i = 1; i <= n_r; ++i) {
    double w = w_of(i * dr);
    if (i == n_r) w *= 0.5;  // trapezoid end weight; w(0) = 0
    buf[i] = w;
  }
  fft_pow2(buf, -1);

  RadialTable tab;
  tab.dr = dr;
  tab.r_max = r_max;
  tab.dv = kTwoPi / (static_cast<double>(n_fft) * dr);
  tab.h.resize(n_fft / 2 + 1);
  for (std::size_t k = 0; k < tab.h.size(); ++k) tab.h[k] = buf[k].real() * dr;
  // w'(0) = 1/2 for m = 0 (J1(x) ~ x/2), 0 for m >= 1
  tab.em_w1_0 = (m == 0) ? 0.5 : 0.0;
  if (rolloff == 0.0) {
    // hard band edge: one-sided slope estimate, the correction is O(dr^2)
    tab.em_w_R = w_of(r_max);
    const double eps = dr * 1e-3;
    tab.em_w1_R = (tab.em_w_R - w_of(r_max - eps)) / eps;
  }
  return tab;
}

}  // namespace

std::vector<double> profile_offsets(double halflen, int n_samples) {
  std::vector<double> s(n_samples);
  const double step = 2.0 * halflen / n_samples;
  // midpoint grid with s[n-1-i] == -s[i] exactly
  for (int i = 0; i < n_samples; ++i) s[i] = (i + 0.5 - 0.5 * n_samples) * step;
  return s;
}

std::vector<double> spectral_profile(const Phantom& phantom, const ReconSpec& spec, Vec2 anchor,
                                     Vec2 direction, double halflen, int n_samples) {
  validate_phantom(phantom);
  validate_recon_spec(spec);
  require(spec.cutoff > 0.0, "spectral_profile: cutoff must be positive");
  require(std::fabs(direction.norm() - 1.0) <= 1e-12,
          "spectral_profile: direction must be a unit vector");
  require(halflen > 0.0, "spectral_profile: halflen must be positive");
  require(n_samples >= 2, "spectral_profile: need at least 2 samples");
  require(std::isfinite(anchor.x) && std::isfinite(anchor.y),
          "spectral_profile: anchor not finite");

  const double phi = spec.apod.phi;
  const double r_max = kTwoPi * spec.cutoff;
  const std::vector<double> s = profile_offsets(halflen, n_samples);
  std::vector<double> out(n_samples, 0.0);

  for (const auto& e : phantom.ellipses) {
    if (e.density == 0.0) continue;
    const bool circular = std::fabs(e.a - e.b) <= 1e-14 * e.a;

    double d_max = (anchor - e.center).norm() + halflen;
    const int panels = std::clamp(
        static_cast<int>(std::ceil(r_max * d_max * 2.0 * phi / 6.0)), 64, 16384);
    const double dphi = 2.0 * phi / panels;

    // quadrature nodes over the wedge (-phi, phi)
    struct Node {
      double angle, weight;
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<size_t>(panels) * 8);
    for (int p = 0; p < panels; ++p) {
      const double c = -phi + (p + 0.5) * dphi;
      for (int g = 0; g < 4; ++g) {
        nodes.push_back({c - 0.5 * dphi * kGlNodes[g], 0.5 * dphi * kGlWeights[g]});
        nodes.push_back({c + 0.5 * dphi * kGlNodes[g], 0.5 * dphi * kGlWeights[g]});
      }
    }

    const double amp = e.density * e.a * e.b / kPi;
    const std::size_t n_nodes = nodes.size();

    std::vector<double> node_kappa(n_nodes), node_v0(n_nodes), node_dv(n_nodes);
    const double cs = std::cos(e.tilt), sn = std::sin(e.tilt);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      const Vec2 theta = unit_vector(nodes[i].angle);
      node_kappa[i] = kappa_eval(spec.apod, std::fabs(nodes[i].angle)) * nodes[i].weight;
      node_v0[i] = (anchor - e.center).dot(theta);
      node_dv[i] = direction.dot(theta);
    }

    if (circular) {
      const RadialTable tab = build_radial_table(r_max, e.a, spec.m, spec.cutoff, spec.rolloff);
#pragma omp parallel for schedule(static)
      for (int j = 0; j < n_samples; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
          acc += node_kappa[i] * tab.eval(node_v0[i] + s[j] * node_dv[i]);
        }
        out[j] += amp * acc;
      }
    } else {
      // effective radius varies with angle: one radial table per node,
      // samples swept inside to keep a single table live at a time
      for (std::size_t i = 0; i < n_nodes; ++i) {
        const Vec2 theta = unit_vector(nodes[i].angle);
        const double tx = cs * theta.x + sn * theta.y;
        const double ty = -sn * theta.x + cs * theta.y;
        const double axis_r = std::hypot(e.a * tx, e.b * ty);
        const RadialTable tab =
            build_radial_table(r_max, axis_r, spec.m, spec.cutoff, spec.rolloff);
#pragma omp parallel for schedule(static)
        for (int j = 0; j < n_samples; ++j) {
          out[j] += amp * node_kappa[i] * tab.eval(node_v0[i] + s[j] * node_dv[i]);
        }
      }
    }
  }
  return out;
}

}  // namespace latomo

#include "latomo/probe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <vector>

#include "latomo/quadrature.hpp"
#include "latomo/special.hpp"

namespace latomo {

EdgeFrame make_edge_frame(int j, double phi) {
  require(j == 1 || j == 2, "edge frame index must be 1 or 2");
  validate_angular_range(AngularRange{phi});
  EdgeFrame f;
  f.j = j;
  const double sy = j == 1 ? 1.0 : -1.0;
  f.e = {std::cos(phi), sy * std::sin(phi)};
  f.e_perp = f.e.perp();
  return f;
}

double multiplier(Vec2 xi, const ReconSpec& spec) {
  validate_recon_spec(spec);
  const double r = xi.norm();
  require(r > 0.0, "multiplier: xi must be nonzero");
  double ang = std::atan2(xi.y, xi.x);
  if (ang > kPi / 2.0) ang -= kPi;
  if (ang < -kPi / 2.0) ang += kPi;
  const double u = std::fabs(ang);
  if (u > spec.apod.phi) return 0.0;
  const double pw = spec.m == 0 ? 1.0 : r;
  return pw * kappa_eval(spec.apod, u);
}

namespace {

/// Smooth angular localizer: 1 for a <= w/2, 0 for a >= w, with a
/// Kaiser-shaped transition. The taper's spectral tail is an additive
/// oscillatory term in A while the leading term shrinks like
/// tau^(m-k), so the taper is the accuracy bottleneck for k >= 1; the
/// Kaiser parameter is set per probe call to put the spectral knee
/// just below the operating phase scale nu = |t| tau_ang (tan w - tan w/2)/2.
class Localizer {
 public:
  Localizer(double width, double nu) : width_(width) {
    const double beta = std::clamp(0.85 * nu, 5.0, 30.0);
    double acc = 0.0;
    for (int i = 0; i < kTableSize; ++i) {
      const double v = (i + 0.5) / kTableSize;
      const double arg = 1.0 - (2.0 * v - 1.0) * (2.0 * v - 1.0);
      acc += bessel_i0(beta * std::sqrt(std::max(arg, 0.0)));
      table_[i + 1] = acc;
    }
    for (auto& c : table_) c /= acc;
  }

  double operator()(double angle_to_ray) const {
    const double y = (width_ - angle_to_ray) / (0.5 * width_);
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double f = y * kTableSize;
    const int i = std::min(static_cast<int>(f), kTableSize - 1);
    return table_[i] + (f - i) * (table_[i + 1] - table_[i]);
  }

 private:
  static constexpr int kTableSize = 4096;
  double width_;
  std::array<double, kTableSize + 1> table_{};
};

}  // namespace

std::complex<double> partial_symbol(const EdgeFrame& frame, double t, double tau,
                                    const ReconSpec& spec, double localizer_width) {
  validate_recon_spec(spec);
  require(t != 0.0, "partial_symbol: t must be nonzero");
  require(tau > 0.0, "partial_symbol: tau must be positive");
  const double phi = spec.apod.phi;
  const double w = localizer_width;
  require(w > 0.0 && w < 2.0 * phi, "partial_symbol: localizer width must lie in (0, 2 phi)");
  require(w < 1.45, "partial_symbol: localizer must stay within a quarter turn of the edge ray");

  const double tau_ang = kTwoPi * tau;
  // Parametrize xi = tau_ang * (e + u * n), with n = -e_perp for j = 1
  // and +e_perp for j = 2, so u >= 0 points into the wedge. The angle
  // of xi to the edge ray is atan(u) and its angle to the wedge axis is
  // |phi - atan(u)|; this scalar form is shared by both frames, which
  // makes the j = 2 value the exact conjugate of the j = 1 value.
  const double phase_sign = frame.j == 1 ? 1.0 : -1.0;
  const double u_max = std::tan(w);
  const double omega = phase_sign * t * tau_ang;
  const double nu = 0.5 * std::fabs(t) * tau_ang * (u_max - std::tan(0.5 * w));
  const Localizer loc_fn(w, nu);

  auto integrand = [&](double u) -> std::complex<double> {
    const double a = std::atan(u);
    const double loc = loc_fn(a);
    if (loc == 0.0) return {0.0, 0.0};
    double amp = kappa_eval(spec.apod, std::fabs(phi - a)) * loc;
    if (spec.m == 1) amp *= std::sqrt(1.0 + u * u);
    const double ph = omega * u;
    return {amp * std::cos(ph), amp * std::sin(ph)};
  };

  const int init_panels =
      std::clamp(static_cast<int>(std::ceil(std::fabs(omega) * u_max / 3.0)), 8, 50000);
  const std::complex<double> integral =
      integrate_adaptive(integrand, 0.0, u_max, 1e-9, init_panels);
  const double scale = spec.m == 0 ? tau_ang : tau_ang * tau_ang;
  return scale * integral;
}

std::complex<double> predicted_symbol(const EdgeFrame& frame, double t, double tau,
                                      const ReconSpec& spec) {
  validate_recon_spec(spec);
  require(t != 0.0, "predicted_symbol: t must be nonzero");
  require(tau > 0.0, "predicted_symbol: tau must be positive");
  const int k = spec.apod.k;
  const double tau_ang = kTwoPi * tau;
  const double psi_k0 = (k % 2 == 0 ? 1.0 : -1.0) * kappa_edge_derivative(spec.apod);
  const double t_signed = frame.j == 1 ? -t : t;
  const std::complex<double> it(0.0, t_signed);
  return psi_k0 / std::pow(it, k + 1) * std::pow(tau_ang, spec.m - k);
}

std::complex<double> predicted_sigma0(const EdgeFrame& frame, double t, double tau,
                                      const ReconSpec& spec) {
  return predicted_symbol(frame, t, tau, spec) / std::sqrt(kTwoPi);
}

std::vector<SymbolProbe> symbol_ratio_scan(const EdgeFrame& frame,
                                           const std::vector<double>& t_list, double tau_lo,
                                           double tau_hi, int n_tau, const ReconSpec& spec,
                                           double localizer_width) {
  require(!t_list.empty(), "symbol_ratio_scan: empty t list");
  require(tau_lo > 0.0 && tau_hi >= 10.0 * tau_lo,
          "symbol_ratio_scan: tau window must span at least one decade");
  require(n_tau >= 4, "symbol_ratio_scan: need at least 4 tau points");

  std::vector<double> taus(n_tau);
  for (int i = 0; i < n_tau; ++i) {
    taus[i] = tau_lo * std::pow(tau_hi / tau_lo, static_cast<double>(i) / (n_tau - 1));
  }

  std::vector<SymbolProbe> probes;
  for (double t : t_list) {
    SymbolProbe p;
    p.frame = frame;
    p.t = t;
    p.tau_grid = taus;
    p.computed.resize(n_tau);
    p.predicted.resize(n_tau);
    p.expected_slope = spec.m - spec.apod.k;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_tau; ++i) {
      p.computed[i] = partial_symbol(frame, t, taus[i], spec, localizer_width);
      p.predicted[i] = predicted_symbol(frame, t, taus[i], spec);
    }
    double sum = 0.0, worst = 0.0;
    std::vector<double> lx(n_tau), ly(n_tau);
    for (int i = 0; i < n_tau; ++i) {
      const double err = std::abs(p.computed[i] / p.predicted[i] - 1.0);
      sum += err;
      worst = std::max(worst, err);
      lx[i] = std::log(taus[i]);
      ly[i] = std::log(std::abs(p.computed[i]));
    }
    p.mean_abs_ratio_err = sum / n_tau;
    p.max_abs_ratio_err = worst;
    p.slope = fit_line(lx.begin(), lx.end(), ly.begin()).slope;
    probes.push_back(std::move(p));
  }
  return probes;
}

void write_probe_csv(std::ostream& out, const std::vector<SymbolProbe>& probes) {
  out << "j,t,tau,re_A,im_A,re_P,im_P,abs_ratio\n";
  out.precision(12);
  for (const auto& p : probes) {
    for (std::size_t i = 0; i < p.tau_grid.size(); ++i) {
      const auto a = p.computed[i];
      const auto pr = p.predicted[i];
      out << p.frame.j << ',' << p.t << ',' << p.tau_grid[i] << ',' << a.real() << ','
          << a.imag() << ',' << pr.real() << ',' << pr.imag() << ','
          << std::abs(a / pr) << '\n';
    }
  }
}

}  // namespace latomo

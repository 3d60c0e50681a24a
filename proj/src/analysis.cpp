#include "latomo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

#include "latomo/fft.hpp"

#include "json.hpp"

namespace latomo {

std::vector<StreakPrediction> predict_streaks(const Phantom& phantom, const AngularRange& range) {
  validate_phantom(phantom);
  validate_angular_range(range);
  std::vector<StreakPrediction> out;
  for (int j = 1; j <= 2; ++j) {
    const EdgeFrame frame = make_edge_frame(j, range.phi);
    for (int ei = 0; ei < static_cast<int>(phantom.ellipses.size()); ++ei) {
      const Ellipse& e = phantom.ellipses[ei];
      for (double sign : {1.0, -1.0}) {
        StreakPrediction p;
        p.j = j;
        p.y_star = e.boundary_point_with_normal(frame.e * sign);
        p.line_dir = frame.e_perp;
        p.xi = frame.e;
        p.source_ellipse = ei;
        out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<SingularityClass> classify_singularities(const Phantom& phantom,
                                                     const AngularRange& range,
                                                     int n_boundary_samples) {
  validate_phantom(phantom);
  validate_angular_range(range);
  require(n_boundary_samples >= 16, "classify_singularities: need >= 16 samples per ellipse");
  constexpr double kEdgeTol = 1e-9;
  std::vector<SingularityClass> out;
  for (int ei = 0; ei < static_cast<int>(phantom.ellipses.size()); ++ei) {
    const Ellipse& e = phantom.ellipses[ei];
    for (int i = 0; i < n_boundary_samples; ++i) {
      const double t = kTwoPi * i / n_boundary_samples;
      SingularityClass c;
      c.point = e.boundary_point(t);
      c.normal = e.outward_normal(t);
      c.source_ellipse = ei;
      double ang = std::atan2(c.normal.y, c.normal.x);
      if (ang > kPi / 2.0) ang -= kPi;
      if (ang < -kPi / 2.0) ang += kPi;
      const double u = std::fabs(ang);
      if (std::fabs(u - range.phi) <= kEdgeTol) {
        c.label = Visibility::EdgeOfWedge;
      } else if (u < range.phi) {
        c.label = Visibility::Visible;
      } else {
        c.label = Visibility::Invisible;
      }
      out.push_back(c);
    }
  }
  return out;
}

std::vector<double> extract_profile(const ImageGrid& img, Vec2 anchor, Vec2 direction,
                                    double halflen, int n_samples) {
  require(n_samples >= 256 && is_pow2(static_cast<std::size_t>(n_samples)),
          "extract_profile: n_samples must be a power of two >= 256");
  require(std::fabs(direction.norm() - 1.0) <= 1e-12,
          "extract_profile: direction must be a unit vector");
  require(halflen > 0.0, "extract_profile: halflen must be positive");
  std::vector<double> out(n_samples);
  const auto s = profile_offsets(halflen, n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const Vec2 p = anchor + direction * s[i];
    if (std::fabs(p.x) > img.extent || std::fabs(p.y) > img.extent) {
      throw ValidationError("extract_profile: profile exits the grid");
    }
    out[i] = img.bilinear(p);
  }
  return out;
}

namespace {

/// Smooth even taper, 1 at the center, zero of order 6 at the ends.
double profile_window(double x) {
  const double q = 1.0 - x * x;
  return q <= 0.0 ? 0.0 : q * q * q * q * q * q;
}

}  // namespace

DecayFit decay_slope(const std::vector<double>& profile, double ds, double window_lo,
                     double window_hi) {
  const std::size_t n = profile.size();
  require(n >= 256 && is_pow2(n), "decay_slope: profile length must be a power of two >= 256");
  require(ds > 0.0, "decay_slope: ds must be positive");
  const double nyquist = 0.5 / ds;
  const double bin = 1.0 / (static_cast<double>(n) * ds);
  require(window_lo >= 4.0 * bin, "decay_slope: window_lo must be >= 4 frequency bins");
  require(window_hi > window_lo && window_hi <= nyquist,
          "decay_slope: window must be within Nyquist");

  double mean = 0.0;
  for (double v : profile) mean += v;
  mean /= static_cast<double>(n);

  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * (i + 0.5) / static_cast<double>(n) - 1.0;
    buf[i] = (profile[i] - mean) * profile_window(x);
  }
  fft_pow2(buf, -1);

  // quarter-octave magnitude averaging before the log-log fit, to
  // suppress the oscillation caused by the singularity's position
  const double ratio = std::pow(2.0, 0.25);
  std::vector<double> lx, ly;
  double lo = window_lo;
  while (lo * ratio <= window_hi * (1.0 + 1e-12)) {
    const double hi = lo * ratio;
    double acc = 0.0, lacc = 0.0;
    int cnt = 0;
    for (std::size_t b = 1; b <= n / 2; ++b) {
      const double nu = b * bin;
      if (nu >= lo && nu < hi) {
        acc += std::abs(buf[b]);
        lacc += std::log(nu);
        ++cnt;
      }
    }
    if (cnt > 0 && acc > 0.0) {
      lx.push_back(lacc / cnt);
      ly.push_back(std::log(acc / cnt));
    }
    lo = hi;
  }
  if (static_cast<int>(lx.size()) < 8) {
    throw ValidationError("decay_slope: fewer than 8 octave-averaged points in window");
  }
  const LineFit fit = fit_line(lx.begin(), lx.end(), ly.begin());
  DecayFit out;
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  out.rms_residual = fit.rms_residual;
  out.n_points = static_cast<int>(lx.size());
  return out;
}

namespace {

bool segment_outside_support(const Phantom& phantom, Vec2 anchor, Vec2 dir, double halflen) {
  for (int i = 0; i <= 64; ++i) {
    const Vec2 p = anchor + dir * (-halflen + 2.0 * halflen * i / 64.0);
    if (point_value(phantom, p) != 0.0) return false;
  }
  return true;
}

}  // namespace

ArtifactReport artifact_report(const Phantom& phantom, const ReconSpec& spec,
                               const std::vector<StreakPrediction>& predictions,
                               const ProbeGeometry& geometry) {
  validate_recon_spec(spec);
  require(spec.cutoff > 0.0, "artifact_report: spec.cutoff must be set");
  require(!predictions.empty(), "artifact_report: no predictions");

  ArtifactReport report;
  report.spec = spec;
  report.geometry = geometry;
  const double fit_lo = geometry.fit_lo > 0.0 ? geometry.fit_lo : spec.cutoff / 16.0;
  const double fit_hi = geometry.fit_hi > 0.0 ? geometry.fit_hi : spec.cutoff / 2.0;

  // one visible-edge fit per source ellipse, on the wedge-axis normal
  std::vector<DecayFit> edge_fits(phantom.ellipses.size());
  std::vector<std::vector<double>> edge_profiles(phantom.ellipses.size());
  const double edge_ds = 2.0 * geometry.edge_halflen / geometry.n_samples;
  for (std::size_t ei = 0; ei < phantom.ellipses.size(); ++ei) {
    const Vec2 axis{1.0, 0.0};
    const Vec2 y_edge = phantom.ellipses[ei].boundary_point_with_normal(axis);
    edge_profiles[ei] = spectral_profile(phantom, spec, y_edge, axis, geometry.edge_halflen,
                                         geometry.n_samples);
    edge_fits[ei] = decay_slope(edge_profiles[ei], edge_ds, fit_lo, fit_hi);
  }

  const double ds = 2.0 * geometry.artifact_halflen / geometry.n_samples;
  for (const auto& pred : predictions) {
    StreakMeasurement m;
    m.prediction = pred;
    const Ellipse& src = phantom.ellipses[pred.source_ellipse];
    const double offset = geometry.offset_factor * src.a;

    Vec2 anchor = pred.y_star + pred.line_dir * offset;
    if (!segment_outside_support(phantom, anchor, pred.xi, geometry.artifact_halflen)) {
      anchor = pred.y_star - pred.line_dir * offset;
      if (!segment_outside_support(phantom, anchor, pred.xi, geometry.artifact_halflen)) {
        throw std::runtime_error("artifact_report: no probe position outside the support");
      }
    }
    m.probe_anchor = anchor;
    m.artifact_profile = spectral_profile(phantom, spec, anchor, pred.xi,
                                          geometry.artifact_halflen, geometry.n_samples);
    m.profile_ds = ds;

    // peak of |profile - median| against a MAD noise floor, searched on
    // the central half of the probe; the streak crosses at s = 0 and the
    // outer quarters only carry the smooth off-support background
    const auto offsets = profile_offsets(geometry.artifact_halflen, geometry.n_samples);
    const int lo = geometry.n_samples / 4, hi = 3 * geometry.n_samples / 4;
    std::vector<double> central(m.artifact_profile.begin() + lo,
                                m.artifact_profile.begin() + hi);
    std::vector<double> sorted = central;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    std::vector<double> dev(central.size());
    int peak_idx = 0;
    for (std::size_t i = 0; i < dev.size(); ++i) {
      dev[i] = std::fabs(central[i] - median);
      if (dev[i] > dev[peak_idx]) peak_idx = static_cast<int>(i);
    }
    // prominence gate on a high-passed window: a moving average at a few
    // resolution lengths removes both the off-support ramp and the
    // artifact's own conormal wings, leaving the cusp (or nothing, for
    // strongly apodized operators)
    const int half_w = std::max(
        4, static_cast<int>(2.0 / spec.cutoff / (2.0 * geometry.artifact_halflen) *
                            geometry.n_samples));
    std::vector<double> resid(central.size());
    for (int i = 0; i < static_cast<int>(central.size()); ++i) {
      const int a = std::max(0, i - half_w);
      const int b = std::min(static_cast<int>(central.size()) - 1, i + half_w);
      double avg = 0.0;
      for (int t = a; t <= b; ++t) avg += central[t];
      resid[i] = std::fabs(central[i] - avg / (b - a + 1));
    }
    std::vector<double> resid_sorted = resid;
    std::nth_element(resid_sorted.begin(), resid_sorted.begin() + resid_sorted.size() / 2,
                     resid_sorted.end());
    m.peak_value = dev[peak_idx];
    m.noise_floor = 1.4826 * resid_sorted[resid_sorted.size() / 2];
    m.peak_found = resid[peak_idx] > 5.0 * m.noise_floor;
    m.peak_offset = offsets[lo + peak_idx];
    m.line_offset_error_px = std::fabs(m.peak_offset) / geometry.pixel_size;

    m.artifact_fit = decay_slope(m.artifact_profile, ds, fit_lo, fit_hi);
    m.edge_fit = edge_fits[pred.source_ellipse];
    m.edge_profile = edge_profiles[pred.source_ellipse];
    m.edge_ds = edge_ds;
    m.gap = m.artifact_fit.slope - m.edge_fit.slope;
    m.predicted_gap = -(spec.apod.k + 0.5);
    report.measurements.push_back(std::move(m));
  }
  return report;
}

void write_report_json(std::ostream& out, const ArtifactReport& report) {
  nlohmann::json j;
  j["spec"] = {{"m", report.spec.m},
               {"phi", report.spec.apod.phi},
               {"k", report.spec.apod.k},
               {"cutoff", report.spec.cutoff},
               {"rolloff", report.spec.rolloff}};
  j["predictions"] = nlohmann::json::array();
  for (const auto& m : report.measurements) {
    nlohmann::json rec;
    rec["j"] = m.prediction.j;
    rec["y_star"] = {m.prediction.y_star.x, m.prediction.y_star.y};
    rec["source_ellipse"] = m.prediction.source_ellipse;
    rec["peak_found"] = m.peak_found;
    rec["line_offset_error_px"] = m.line_offset_error_px;
    rec["artifact_slope"] = m.artifact_fit.slope;
    rec["edge_slope"] = m.edge_fit.slope;
    rec["gap"] = m.gap;
    rec["predicted_gap"] = m.predicted_gap;
    rec["residuals"] = {{"artifact", m.artifact_fit.rms_residual},
                        {"edge", m.edge_fit.rms_residual}};
    j["predictions"].push_back(rec);
  }
  out << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const ArtifactReport& report) {
  out << "kind,prediction,j,abscissa,value\n";
  out.precision(12);
  for (std::size_t pi = 0; pi < report.measurements.size(); ++pi) {
    const auto& m = report.measurements[pi];
    const auto s = profile_offsets(report.geometry.artifact_halflen, report.geometry.n_samples);
    for (std::size_t i = 0; i < m.artifact_profile.size(); ++i) {
      out << "profile," << pi << ',' << m.prediction.j << ',' << s[i] << ','
          << m.artifact_profile[i] << '\n';
    }
    // magnitude spectrum of the windowed profile
    const std::size_t n = m.artifact_profile.size();
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 2.0 * (i + 0.5) / static_cast<double>(n) - 1.0;
      const double q = 1.0 - x * x;
      buf[i] = m.artifact_profile[i] * (q <= 0 ? 0.0 : q * q * q * q * q * q);
    }
    fft_pow2(buf, -1);
    const double bin = 1.0 / (static_cast<double>(n) * m.profile_ds);
    for (std::size_t b = 1; b <= n / 2; ++b) {
      out << "spectrum," << pi << ',' << m.prediction.j << ',' << b * bin << ','
          << std::abs(buf[b]) << '\n';
    }
  }
}

}  // namespace latomo

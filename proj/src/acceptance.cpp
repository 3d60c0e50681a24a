#include "latomo/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "latomo/analysis.hpp"
#include "latomo/io.hpp"
#include "latomo/recon.hpp"

namespace latomo {

namespace {

struct Config {
  double phi = kPi / 4.0;
  int n = 1024;
  int angles = 720;
  // offset counts are free parameters; they are chosen so that linear
  // interpolation of the filtered rows stays below the tolerance of the
  // criterion consuming them
  int offsets = 4096;
  int oracle_offsets = 8192;  // used for the pipeline-vs-spectral check
  double cutoff = 128.0;
  double rolloff = 0.25;
  int samples = 4096;
  int erode_px = 4;
  double probe_cutoff = 128.0;  // criteria 7 and 8 keep full frequencies
};

Config make_config(bool quick) {
  Config c;
  if (quick) {
    c.n = 256;
    c.angles = 240;
    c.offsets = 1024;
    c.oracle_offsets = 2048;
    c.cutoff = 48.0;
    c.samples = 2048;
  }
  return c;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

ReconSpec make_spec(const Config& c, int m, int k) {
  ReconSpec spec;
  spec.m = m;
  spec.apod = Apodization{c.phi, k};
  spec.cutoff = c.cutoff;
  spec.rolloff = c.rolloff;
  return spec;
}

ProbeGeometry make_geometry(const Config& c) {
  ProbeGeometry g;
  g.n_samples = c.samples;
  g.pixel_size = 2.0 / (c.n - 1);
  return g;
}

/// Jump estimate across s = 0: difference of short means on each side,
/// skipping one resolution length around the edge.
double jump_estimate(const std::vector<double>& profile, double halflen, double cutoff) {
  const int n = static_cast<int>(profile.size());
  const auto s = profile_offsets(halflen, n);
  const double lo = 2.0 / cutoff, hi = 6.0 / cutoff;
  double above = 0.0, below = 0.0;
  int na = 0, nb = 0;
  for (int i = 0; i < n; ++i) {
    if (s[i] > lo && s[i] < hi) {
      above += profile[i];
      ++na;
    } else if (s[i] < -lo && s[i] > -hi) {
      below += profile[i];
      ++nb;
    }
  }
  return std::fabs(above / na - below / nb);
}

using Check = CriterionResult;

Check criterion_exact_fbp(const Config& c, const Phantom& disk) {
  Check r{1, "exact-fbp-baseline", false, ""};
  const Sinogram sino = radon_phantom(disk, std::nullopt, c.angles, c.offsets);
  ReconSpec spec = make_spec(c, 0, 0);
  const ImageGrid img = reconstruct(sino, spec, c.n, 1.0);
  const Ellipse& e = disk.ellipses[0];
  const double rho = e.density;
  const double r_in = e.a - c.erode_px * img.spacing();
  double max_dev = 0.0, sq = 0.0;
  long count = 0;
  for (int iy = 0; iy < c.n; ++iy) {
    for (int ix = 0; ix < c.n; ++ix) {
      const Vec2 p{img.coord(ix), img.coord(iy)};
      if ((p - e.center).norm() <= r_in) {
        const double d = img.at(iy, ix) - rho;
        max_dev = std::max(max_dev, std::fabs(d));
        sq += d * d;
        ++count;
      }
    }
  }
  const double rmse = std::sqrt(sq / count);
  r.pass = max_dev <= 0.05 * rho && rmse < 0.03;
  r.details = "max interior deviation " + fmt(100.0 * max_dev / rho) + "% (tol 5%), rmse " +
              fmt(rmse) + " (tol 0.03)";
  return r;
}

Check criterion_visible_edge(const Config& c, const Phantom& disk) {
  Check r{2, "visible-edge-order", false, ""};
  const Vec2 axis{1.0, 0.0};
  const Vec2 y_edge = disk.ellipses[0].boundary_point_with_normal(axis);
  const ProbeGeometry g = make_geometry(c);
  const double ds = 2.0 * g.edge_halflen / g.n_samples;
  double slope[2];
  for (int m = 0; m <= 1; ++m) {
    const auto profile = spectral_profile(disk, make_spec(c, m, 0), y_edge, axis, g.edge_halflen,
                                          g.n_samples);
    slope[m] = decay_slope(profile, ds, c.cutoff / 16.0, c.cutoff / 2.0).slope;
  }
  const double diff = slope[1] - slope[0];
  r.pass = std::fabs(slope[0] + 1.0) <= 0.2 && std::fabs(slope[1]) <= 0.2 && diff >= 0.8 &&
           diff <= 1.2;
  r.details = "slope m=0: " + fmt(slope[0]) + " (want -1 +- 0.2), m=1: " + fmt(slope[1]) +
              " (want 0 +- 0.2), difference " + fmt(diff) + " (want [0.8, 1.2])";
  return r;
}

Check criterion_invisible_edge(const Config& c, const Phantom& disk) {
  Check r{3, "invisible-edge-suppression", false, ""};
  const ReconSpec spec = make_spec(c, 0, 0);
  const ProbeGeometry g = make_geometry(c);
  const Ellipse& e = disk.ellipses[0];
  // visible edge on the wedge axis; invisible edge 75 degrees up, which
  // keeps the probe clear of the tangent streak lines
  const Vec2 vis_n{1.0, 0.0};
  const Vec2 inv_n = unit_vector(75.0 * kPi / 180.0);
  const auto vis = spectral_profile(disk, spec, e.boundary_point_with_normal(vis_n), vis_n,
                                    g.edge_halflen, g.n_samples);
  const auto inv = spectral_profile(disk, spec, e.boundary_point_with_normal(inv_n), inv_n,
                                    g.edge_halflen, g.n_samples);
  const double jv = jump_estimate(vis, g.edge_halflen, c.cutoff);
  const double ji = jump_estimate(inv, g.edge_halflen, c.cutoff);
  r.pass = ji < 0.10 * jv;
  r.details = "invisible jump " + fmt(ji) + " vs visible " + fmt(jv) + " (" +
              fmt(100.0 * ji / jv) + "%, tol 10%)";
  return r;
}

Check criterion_streak_geometry(const Config& c, const ArtifactReport& report) {
  Check r{4, "streak-geometry", false, ""};
  double worst = 0.0;
  bool all_found = true;
  for (const auto& m : report.measurements) {
    all_found = all_found && m.peak_found;
    worst = std::max(worst, m.line_offset_error_px);
  }
  r.pass = all_found && worst <= 2.0;
  r.details = std::to_string(report.measurements.size()) + " predictions, worst peak offset " +
              fmt(worst) + " px (tol 2 px)" + (all_found ? "" : ", peak missing");
  return r;
}

Check criterion_half_order(const Config&, const ArtifactReport& report) {
  Check r{5, "half-order-weakening", false, ""};
  double worst = 0.0;
  for (const auto& m : report.measurements) {
    worst = std::max(worst, std::fabs(m.gap + 0.5));
  }
  r.pass = worst <= 0.25;
  r.details = "worst |gap + 0.5| = " + fmt(worst) + " (tol 0.25)";
  return r;
}

double mean_artifact_slope(const ArtifactReport& report) {
  double acc = 0.0;
  for (const auto& m : report.measurements) acc += m.artifact_fit.slope;
  return acc / static_cast<double>(report.measurements.size());
}

Check criterion_k_reduction(const Config& c, const Phantom& disk,
                            const std::vector<StreakPrediction>& preds,
                            const ArtifactReport& m0k0) {
  Check r{6, "k-order-artifact-reduction", false, ""};
  const ProbeGeometry g = make_geometry(c);
  std::ostringstream details;
  bool ok = true;
  for (int m = 0; m <= 1; ++m) {
    const int k_max = m == 0 ? 2 : 1;
    std::vector<double> slopes;
    for (int k = 0; k <= k_max; ++k) {
      if (m == 0 && k == 0) {
        slopes.push_back(mean_artifact_slope(m0k0));
      } else {
        slopes.push_back(
            mean_artifact_slope(artifact_report(disk, make_spec(c, m, k), preds, g)));
      }
    }
    details << "m=" << m << " slopes:";
    for (double s : slopes) details << ' ' << fmt(s);
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
      const double gap = slopes[i] - slopes[i + 1];
      ok = ok && gap >= 0.6 && gap <= 1.4;
      details << " gap " << fmt(gap);
    }
    details << "; ";
  }
  r.pass = ok;
  r.details = details.str() + "(gaps must lie in [0.6, 1.4])";
  return r;
}

Check criterion_symbol(const Config& c, std::ostream& log) {
  Check r{7, "symbol-verification", false, ""};
  // ratio statistics over [cutoff/8, cutoff/2]; the scan itself spans a
  // decade, and the order fit runs on a separate decade where the
  // localizer contamination is negligible at every t
  const double mean_lo = c.probe_cutoff / 8.0;
  const double mean_hi = c.probe_cutoff / 2.0;
  const double slope_lo = mean_hi * 0.625;
  const double width = c.phi / 2.0;
  double worst_ratio = 0.0, worst_slope_err = 0.0;
  for (int m = 0; m <= 1; ++m) {
    for (int k = 0; k <= 1; ++k) {
      const ReconSpec spec = make_spec(c, m, k);
      for (int j = 1; j <= 2; ++j) {
        const EdgeFrame frame = make_edge_frame(j, c.phi);
        const auto ratio_scan =
            symbol_ratio_scan(frame, {0.5, 1.0}, mean_lo, 10.0 * mean_lo, 17, spec, width);
        const auto slope_scan =
            symbol_ratio_scan(frame, {0.5, 1.0}, slope_lo, 10.0 * slope_lo, 9, spec, width);
        for (std::size_t pi = 0; pi < ratio_scan.size(); ++pi) {
          const auto& p = ratio_scan[pi];
          double sum = 0.0;
          int cnt = 0;
          for (std::size_t i = 0; i < p.tau_grid.size(); ++i) {
            if (p.tau_grid[i] <= mean_hi * (1.0 + 1e-9)) {
              sum += std::abs(p.computed[i] / p.predicted[i] - 1.0);
              ++cnt;
            }
          }
          const double mean_err = sum / cnt;
          const double slope = slope_scan[pi].slope;
          const double slope_err = std::fabs(slope - p.expected_slope);
          worst_ratio = std::max(worst_ratio, mean_err);
          worst_slope_err = std::max(worst_slope_err, slope_err);
          log << "    probe m=" << m << " k=" << k << " j=" << j << " t=" << p.t
              << ": mean|A/P-1|=" << fmt(mean_err) << " slope=" << fmt(slope) << " (want "
              << fmt(p.expected_slope) << ")\n";
        }
      }
    }
  }
  r.pass = worst_ratio < 0.1 && worst_slope_err <= 0.1;
  r.details = "worst mean|A/P-1| " + fmt(worst_ratio) + " (tol 0.1), worst slope error " +
              fmt(worst_slope_err) + " (tol 0.1)";
  return r;
}

Check criterion_offdiagonal(const Config& c) {
  Check r{8, "off-diagonal-decay", false, ""};
  const double tau = c.probe_cutoff / 2.0;
  const double width = c.phi / 2.0;
  double worst = 0.0;
  for (int m = 0; m <= 1; ++m) {
    for (int k = 0; k <= 1; ++k) {
      const ReconSpec spec = make_spec(c, m, k);
      for (int j = 1; j <= 2; ++j) {
        const EdgeFrame frame = make_edge_frame(j, c.phi);
        double mn = 1e300, mx = 0.0;
        for (double t : {0.25, 0.5, 1.0}) {
          const double v =
              std::abs(partial_symbol(frame, t, tau, spec, width)) * std::pow(t, k + 1);
          mn = std::min(mn, v);
          mx = std::max(mx, v);
        }
        worst = std::max(worst, mx / mn - 1.0);
      }
    }
  }
  r.pass = worst <= 0.10;
  r.details = "worst spread of |A| * t^(k+1) over t: " + fmt(100.0 * worst) + "% (tol 10%)";
  return r;
}

Check criterion_oracle(const Config& c, const Phantom& disk) {
  Check r{9, "oracle-equivalence", false, ""};
  const ProbeGeometry g = make_geometry(c);
  const Ellipse& e = disk.ellipses[0];
  double worst_line = 0.0;

  const Sinogram sino =
      radon_phantom(disk, AngularRange{c.phi}, c.angles, c.oracle_offsets);
  for (int m = 0; m <= 1; ++m) {
    for (int k = 0; k <= 1; ++k) {
      const ReconSpec spec = make_spec(c, m, k);
      struct Line {
        Vec2 anchor, dir;
        double halflen;
      };
      const EdgeFrame frame = make_edge_frame(1, c.phi);
      const Vec2 y_star = e.boundary_point_with_normal(frame.e);
      const std::vector<Line> lines = {
          {e.boundary_point_with_normal({1.0, 0.0}), {1.0, 0.0}, g.edge_halflen},
          {y_star + frame.e_perp * (g.offset_factor * e.a), frame.e, 0.35},
      };
      // deviations are normalized by the largest probe value of the
      // operator: the backprojection's angular midpoint rule gains up to
      // (q dphi)^2/24 on near-cutoff modes at the probe radii, a fixed
      // absolute error floor that a small off-support profile cannot
      // absorb relative to itself
      double max_abs = 0.0, max_diff = 0.0;
      for (const auto& line : lines) {
        const auto oracle =
            spectral_profile(disk, spec, line.anchor, line.dir, line.halflen, c.samples);
        const auto s = profile_offsets(line.halflen, c.samples);
        std::vector<Vec2> pts(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) pts[i] = line.anchor + line.dir * s[i];
        const auto pipe = reconstruct_at_points(sino, spec, pts);
        for (std::size_t i = 0; i < s.size(); ++i) {
          max_abs = std::max(max_abs, std::fabs(oracle[i]));
          max_diff = std::max(max_diff, std::fabs(oracle[i] - pipe[i]));
        }
      }
      worst_line = std::max(worst_line, max_diff / max_abs);
    }
  }

  // analytic vs quadrature transform on random rays
  const ImageGrid raster = rasterize(disk, c.n, 1.0, 2);
  std::mt19937 rng(20240811);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  double worst_ray = 0.0;
  for (int i = 0; i < 32; ++i) {
    const Vec2 theta = unit_vector(ang(rng));
    const double s = off(rng);
    const double exact = radon_ellipse(e, theta, s);
    const double numeric = radon_numeric(raster, theta, s, raster.spacing() / 2.0);
    worst_ray = std::max(worst_ray, std::fabs(exact - numeric));
  }

  r.pass = worst_line <= 0.05 && worst_ray < 0.02;
  r.details = "pipeline vs spectral worst deviation " + fmt(100.0 * worst_line) +
              "% of max (tol 5%); radon oracle worst " + fmt(worst_ray) + " (tol 0.02)";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log) {
  const Config c = make_config(options.quick);
  const Phantom disk = default_disk_phantom();
  const auto preds = predict_streaks(disk, AngularRange{c.phi});
  const ProbeGeometry g = make_geometry(c);

  std::vector<CriterionResult> results;
  auto emit = [&](Check r) {
    log << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.details
        << "\n";
    log.flush();
    results.push_back(std::move(r));
  };

  log << "acceptance suite" << (options.quick ? " (quick)" : "") << ": disk phantom, phi=pi/4, n="
      << c.n << ", angles=" << c.angles << ", cutoff=" << c.cutoff << " cycles/unit\n";

  emit(criterion_exact_fbp(c, disk));
  emit(criterion_visible_edge(c, disk));
  emit(criterion_invisible_edge(c, disk));

  const ArtifactReport m0k0 = artifact_report(disk, make_spec(c, 0, 0), preds, g);
  emit(criterion_streak_geometry(c, m0k0));
  emit(criterion_half_order(c, m0k0));
  emit(criterion_k_reduction(c, disk, preds, m0k0));
  emit(criterion_symbol(c, log));
  emit(criterion_offdiagonal(c));
  emit(criterion_oracle(c, disk));

  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  log << (failed == 0 ? "all criteria passed\n"
                      : std::to_string(failed) + " criteria failed\n");
  return results;
}

int acceptance_exit_code(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return 2;
  }
  return 0;
}

}  // namespace latomo

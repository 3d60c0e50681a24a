#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latomo/probe.hpp"
#include "latomo/spectral.hpp"

namespace latomo {

/// Tangent line along which an edge-direction singularity smears.
struct StreakPrediction {
  int j = 1;                 // which wedge edge generates it
  Vec2 y_star;               // boundary point whose outward normal is +-e_j
  Vec2 line_dir;             // e_j rotated +pi/2; the line is {y_star + t line_dir}
  Vec2 xi;                   // singular direction e_j
  int source_ellipse = 0;
};

/// Boundary points where the outward normal hits a wedge edge exactly,
/// two per ellipse per edge, with their tangent streak lines.
std::vector<StreakPrediction> predict_streaks(const Phantom& phantom, const AngularRange& range);

enum class Visibility { Visible, Invisible, EdgeOfWedge };

struct SingularityClass {
  Vec2 point;
  Vec2 normal;
  Visibility label = Visibility::Visible;
  int source_ellipse = 0;
};

/// Samples each ellipse boundary and labels every point by whether its
/// normal direction lies inside the open wedge, outside its closure,
/// or on a boundary ray (within 1e-9 rad).
std::vector<SingularityClass> classify_singularities(const Phantom& phantom,
                                                     const AngularRange& range,
                                                     int n_boundary_samples);

/// Uniform bilinear samples of the image along anchor +- halflen * direction.
/// n_samples must be a power of two >= 256; every sample must stay on the grid.
std::vector<double> extract_profile(const ImageGrid& img, Vec2 anchor, Vec2 direction,
                                    double halflen, int n_samples);

/// Log-log slope of a transverse profile's Fourier magnitude; the
/// operational measure of singularity strength (a jump fits to -1).
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;  // cycles per scene unit
  double window_hi = 0.0;
  double rms_residual = 0.0;
  int n_points = 0;

  bool plausible_power_law(double max_residual = 0.3) const {
    return rms_residual <= max_residual;
  }
};

/// Tapers the profile with a smooth even window, DFTs it, averages the
/// magnitudes over geometric (quarter-octave) bins, and fits
/// log magnitude against log frequency inside [window_lo, window_hi].
/// Fails if fewer than 8 averaged bins fall in the window.
DecayFit decay_slope(const std::vector<double>& profile, double ds, double window_lo,
                     double window_hi);

/// Probe layout for artifact measurements. Artifact probes cross the
/// streak line at offset_factor times the source ellipse's major
/// semi-axis from the generating point, outside the phantom support.
struct ProbeGeometry {
  double offset_factor = 1.5;
  double artifact_halflen = 0.8;
  double edge_halflen = 0.45;
  int n_samples = 4096;
  double fit_lo = 0.0;  // 0 = cutoff/16
  double fit_hi = 0.0;  // 0 = cutoff/2
  double pixel_size = 2.0 / 1023.0;  // for reporting offsets in pixels
};

struct StreakMeasurement {
  StreakPrediction prediction;
  Vec2 probe_anchor;
  bool peak_found = false;
  double peak_offset = 0.0;            // signed distance of the peak from the line
  double line_offset_error_px = 0.0;
  double peak_value = 0.0;
  double noise_floor = 0.0;
  DecayFit artifact_fit;
  DecayFit edge_fit;
  double gap = 0.0;            // artifact slope - edge slope
  double predicted_gap = 0.0;  // -(k + 1/2) for jump-type generators
  std::vector<double> artifact_profile;
  std::vector<double> edge_profile;
  double profile_ds = 0.0;
  double edge_ds = 0.0;
};

struct ArtifactReport {
  ReconSpec spec;
  ProbeGeometry geometry;
  std::vector<StreakMeasurement> measurements;
};

/// Measures every predicted streak: locates the transverse artifact
/// peak, fits its decay slope, fits a visible-edge slope of the source
/// ellipse, and compares the slope gap with -(k + 1/2). Profiles come
/// from spectral_profile. A missing peak is reported, not fatal.
ArtifactReport artifact_report(const Phantom& phantom, const ReconSpec& spec,
                               const std::vector<StreakPrediction>& predictions,
                               const ProbeGeometry& geometry);

/// JSON report: one record per prediction with
/// {j, y_star, line_offset_error_px, artifact_slope, edge_slope, gap,
///  predicted_gap, residuals}.
void write_report_json(std::ostream& out, const ArtifactReport& report);

/// Companion CSV of raw profiles and their magnitude spectra.
void write_report_csv(std::ostream& out, const ArtifactReport& report);

}  // namespace latomo

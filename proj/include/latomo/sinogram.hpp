#pragma once

#include <optional>
#include <vector>

#include "latomo/phantom.hpp"

namespace latomo {

/// Offsets always span the scene diagonal, so every line meeting the
/// scene square is represented at every angle.
inline constexpr double kOffsetHalfRange = 1.4142135623730951;  // sqrt(2)

/// Wedge of available directions: +-(cos phi, sin phi), |phi| < Phi.
struct AngularRange {
  double phi = 0.0;
};

void validate_angular_range(const AngularRange& r);

enum class SinogramKind { Full, Limited };

/// Line-integral samples on an angle x offset grid.
/// Full data covers [0, pi); limited data samples the open wedge
/// (-Phi, Phi) with endpoints excluded by a half-spacing offset.
struct Sinogram {
  SinogramKind kind = SinogramKind::Full;
  double phi = 0.0;  // wedge half-angle, Limited only
  std::vector<double> angles;
  std::vector<double> offsets;
  std::vector<double> values;  // angles.size() x offsets.size(), row-major
  double dphi = 0.0;
  double ds = 0.0;

  double& at(int ia, int is) { return values[static_cast<size_t>(ia) * offsets.size() + is]; }
  double at(int ia, int is) const { return values[static_cast<size_t>(ia) * offsets.size() + is]; }
};

/// Angle grid only (no values); radon_phantom fills values in.
Sinogram make_sinogram_grid(std::optional<AngularRange> range, int n_angles, int n_offsets);

/// Chord length times density of the line {x . theta = s} through e.
/// theta must be a unit vector (within 1e-12).
double radon_ellipse(const Ellipse& e, Vec2 theta, double s);

/// Exact transform of the whole phantom on the grid. range = nullopt
/// selects full-circle data over [0, pi).
Sinogram radon_phantom(const Phantom& phantom, std::optional<AngularRange> range, int n_angles,
                       int n_offsets);

/// Quadrature oracle: composite midpoint rule of the bilinearly
/// interpolated image along the line, t spanning the grid diagonal.
double radon_numeric(const ImageGrid& img, Vec2 theta, double s, double step);

}  // namespace latomo

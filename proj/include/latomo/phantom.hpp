#pragma once

#include <string>
#include <vector>

#include "latomo/common.hpp"

namespace latomo {

/// The scene is the square [-1,1]^2; every ellipse must fit inside it.
inline constexpr double kSceneHalfWidth = 1.0;

/// Rasterization budget: n and n*supersample per axis.
inline constexpr int kMaxRasterSide = 16384;
inline constexpr long kMaxSamplesPerAxis = 1L << 18;

struct Ellipse {
  Vec2 center;
  double a = 0.0;      // major semi-axis, a >= b > 0
  double b = 0.0;      // minor semi-axis
  double tilt = 0.0;   // radians, [0, pi)
  double density = 0.0;

  /// Quadratic form value of x in ellipse coordinates; <= 1 means inside.
  double quadratic_form(Vec2 x) const;
  /// Point on the boundary whose outward normal is the unit vector n.
  Vec2 boundary_point_with_normal(Vec2 n) const;
  /// Outward unit normal at boundary parameter t (x = c + A(cos t, sin t)).
  Vec2 outward_normal(double t) const;
  Vec2 boundary_point(double t) const;
};

void validate_ellipse(const Ellipse& e);

struct Phantom {
  std::vector<Ellipse> ellipses;
  std::string name;
};

void validate_phantom(const Phantom& p);

/// Square n x n raster over [-extent, extent]^2, row-major,
/// row index increasing with y. Pixel spacing 2*extent/(n-1).
struct ImageGrid {
  int n = 0;
  double extent = 1.0;
  std::vector<double> values;  // n*n, values[iy*n + ix]

  double spacing() const { return 2.0 * extent / (n - 1); }
  /// Symmetric form: coord(n-1-i) == -coord(i) exactly.
  double coord(int i) const { return (i - 0.5 * (n - 1)) * spacing(); }
  double& at(int iy, int ix) { return values[static_cast<size_t>(iy) * n + ix]; }
  double at(int iy, int ix) const { return values[static_cast<size_t>(iy) * n + ix]; }
  /// Bilinear sample; 0 outside the grid.
  double bilinear(Vec2 p) const;
};

/// Sum of member densities at x; boundary points count as inside.
double point_value(const Phantom& phantom, Vec2 x);

/// Pixel value = mean of point_value over a supersample^2 sub-grid per pixel.
ImageGrid rasterize(const Phantom& phantom, int n, double extent = 1.0, int supersample = 1);

/// Text format: one `cx cy a b tilt_rad density` line per ellipse,
/// `#` comments and blank lines allowed.
Phantom parse_phantom_text(const std::string& text, const std::string& name);
Phantom load_phantom(const std::string& path);
std::string format_phantom_text(const Phantom& p);

/// Disk centered (0.2, 0), radius 0.5, density 1. Curvature is nonzero
/// everywhere on its boundary, which the artifact measurements rely on.
Phantom default_disk_phantom();

}  // namespace latomo

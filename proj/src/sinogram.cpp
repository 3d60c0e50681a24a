#include "latomo/sinogram.hpp"

#include <cmath>

namespace latomo {

void validate_angular_range(const AngularRange& r) {
  require(r.phi > 0.0 && r.phi < kPi / 2.0, "wedge half-angle must satisfy 0 < phi < pi/2");
}

Sinogram make_sinogram_grid(std::optional<AngularRange> range, int n_angles, int n_offsets) {
  require(n_angles >= 2, "need at least 2 angles");
  require(n_offsets >= 16, "need at least 16 offsets");
  Sinogram sino;
  if (range) {
    validate_angular_range(*range);
    sino.kind = SinogramKind::Limited;
    sino.phi = range->phi;
    sino.dphi = 2.0 * range->phi / n_angles;
    sino.angles.resize(n_angles);
    // midpoint grid over the open wedge, written so that
    // angles[n-1-i] == -angles[i] exactly
    for (int i = 0; i < n_angles; ++i) {
      sino.angles[i] = (i + 0.5 - 0.5 * n_angles) * sino.dphi;
    }
  } else {
    sino.kind = SinogramKind::Full;
    sino.dphi = kPi / n_angles;
    sino.angles.resize(n_angles);
    for (int i = 0; i < n_angles; ++i) sino.angles[i] = i * sino.dphi;
  }
  sino.ds = 2.0 * kOffsetHalfRange / (n_offsets - 1);
  sino.offsets.resize(n_offsets);
  for (int j = 0; j < n_offsets; ++j) {
    sino.offsets[j] = (j - 0.5 * (n_offsets - 1)) * sino.ds;
  }
  sino.values.assign(static_cast<size_t>(n_angles) * n_offsets, 0.0);
  return sino;
}

double radon_ellipse(const Ellipse& e, Vec2 theta, double s) {
  require(std::fabs(theta.norm() - 1.0) <= 1e-12, "radon_ellipse: theta must be a unit vector");
  // Affine substitution maps the ellipse to the unit disk; the chord
  // reduces to the disk case with effective radius R(theta) = |A^T theta|.
  const double c = std::cos(e.tilt), sn = std::sin(e.tilt);
  const double tx = c * theta.x + sn * theta.y;   // Rot(-tilt) * theta
  const double ty = -sn * theta.x + c * theta.y;
  const double r2 = e.a * e.a * tx * tx + e.b * e.b * ty * ty;
  const double v = s - e.center.dot(theta);
  const double d2 = r2 - v * v;
  if (d2 <= 0.0) return 0.0;
  return 2.0 * e.density * e.a * e.b * std::sqrt(d2) / r2;
}

Sinogram radon_phantom(const Phantom& phantom, std::optional<AngularRange> range, int n_angles,
                       int n_offsets) {
  validate_phantom(phantom);
  Sinogram sino = make_sinogram_grid(range, n_angles, n_offsets);
  const int n_off = static_cast<int>(sino.offsets.size());
#pragma omp parallel for schedule(static)
  for (int ia = 0; ia < n_angles; ++ia) {
    const Vec2 theta = unit_vector(sino.angles[ia]);
    for (int is = 0; is < n_off; ++is) {
      double v = 0.0;
      for (const auto& e : phantom.ellipses) v += radon_ellipse(e, theta, sino.offsets[is]);
      sino.at(ia, is) = v;
    }
  }
  return sino;
}

double radon_numeric(const ImageGrid& img, Vec2 theta, double s, double step) {
  require(std::fabs(theta.norm() - 1.0) <= 1e-12, "radon_numeric: theta must be a unit vector");
  require(step > 0.0 && step <= img.spacing() + 1e-15,
          "radon_numeric: step must be positive and at most the pixel spacing");
  const double half = img.extent * std::numbers::sqrt2;
  const int n = static_cast<int>(std::ceil(2.0 * half / step));
  const double h = 2.0 * half / n;
  const Vec2 perp = theta.perp();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = -half + (i + 0.5) * h;
    sum += img.bilinear(theta * s + perp * t);
  }
  return sum * h;
}

}  // namespace latomo

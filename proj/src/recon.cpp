#include "latomo/recon.hpp"

#include <cmath>

#include "latomo/filters.hpp"

namespace latomo {

void validate_recon_spec(const ReconSpec& spec) {
  require(spec.m == 0 || spec.m == 1, "recon: m must be 0 or 1");
  validate_apodization(spec.apod);
  require(spec.cutoff >= 0.0, "recon: cutoff must be >= 0");
  require(spec.rolloff >= 0.0 && spec.rolloff <= 0.5, "recon: rolloff must lie in [0, 0.5]");
}

namespace {

struct FilteredSinogram {
  std::vector<std::vector<double>> rows;
  const Sinogram* sino = nullptr;
  double weight = 0.0;  // dphi / (2 pi), antipodal doubling included
};

/// Angle distance to the wedge axis for a direction angle in [0, pi).
double fold_to_axis(double angle) {
  double a = std::fmod(std::fabs(angle), kPi);
  if (a > kPi / 2.0) a = kPi - a;
  return a;
}

FilteredSinogram filter_all_rows(const Sinogram& sino, const ReconSpec& spec) {
  validate_recon_spec(spec);
  if (sino.kind == SinogramKind::Limited) {
    require(std::fabs(sino.phi - spec.apod.phi) <= 1e-9,
            "recon: sinogram wedge does not match the apodization wedge");
  } else {
    require(spec.apod.k == 0, "recon: apodization requires limited-angle data");
  }
  const int n_angles = static_cast<int>(sino.angles.size());
  FilteredSinogram out;
  out.sino = &sino;
  out.weight = sino.dphi / kTwoPi;
  out.rows.resize(n_angles);
#pragma omp parallel for schedule(static)
  for (int ia = 0; ia < n_angles; ++ia) {
    const double kap = sino.kind == SinogramKind::Full
                           ? 1.0
                           : kappa_eval(spec.apod, fold_to_axis(sino.angles[ia]));
    std::vector<double> row(sino.offsets.size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = kap * sino.at(ia, static_cast<int>(j));
    out.rows[ia] = apply_fourier_multiplier(row, sino.ds, [&](double nu) {
      const double tau = kTwoPi * nu;
      const double base = spec.m == 0 ? std::fabs(tau) : tau * tau;
      return base * lowpass_taper(nu, spec.cutoff, spec.rolloff);
    });
  }
  return out;
}

double backproject_point(const FilteredSinogram& filt, Vec2 p) {
  const Sinogram& sino = *filt.sino;
  const int n_angles = static_cast<int>(sino.angles.size());
  const int n_off = static_cast<int>(sino.offsets.size());
  const double s0 = sino.offsets.front();
  const double inv_ds = 1.0 / sino.ds;
  double acc = 0.0;
  for (int ia = 0; ia < n_angles; ++ia) {
    const double s = p.x * std::cos(sino.angles[ia]) + p.y * std::sin(sino.angles[ia]);
    const double f = (s - s0) * inv_ds;
    if (f < 0.0 || f > n_off - 1) continue;
    int j = static_cast<int>(f);
    if (j >= n_off - 1) j = n_off - 2;
    const double a = f - j;
    acc += (1.0 - a) * filt.rows[ia][j] + a * filt.rows[ia][j + 1];
  }
  return acc * filt.weight;
}

}  // namespace

ImageGrid reconstruct(const Sinogram& sino, const ReconSpec& spec, int n, double extent) {
  require(n >= 2, "recon: n must be >= 2");
  require(extent > 0.0, "recon: extent must be positive");
  const FilteredSinogram filt = filter_all_rows(sino, spec);

  ImageGrid img;
  img.n = n;
  img.extent = extent;
  img.values.assign(static_cast<size_t>(n) * n, 0.0);

  const int n_angles = static_cast<int>(sino.angles.size());
  const int n_off = static_cast<int>(sino.offsets.size());
  const double s0 = sino.offsets.front();
  const double inv_ds = 1.0 / sino.ds;

  // Angles are consumed in mirror pairs (i, n-1-i); the two members of
  // a pair are added to each other before the accumulator. Limited-data
  // angle grids are odd under phi -> -phi, so this makes reconstructions
  // of vertically symmetric phantoms exactly mirror-symmetric, and the
  // fixed per-pixel order keeps results independent of the thread count.
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    const double y = img.coord(iy);
    double* out_row = &img.values[static_cast<size_t>(iy) * n];
    auto term = [&](int ia, int ix) {
      const double c = std::cos(sino.angles[ia]), sn = std::sin(sino.angles[ia]);
      const double f = ((img.coord(ix)) * c + y * sn - s0) * inv_ds;
      if (f < 0.0 || f > n_off - 1) return 0.0;
      int j = static_cast<int>(f);
      if (j >= n_off - 1) j = n_off - 2;
      const double a = f - j;
      const double* row = filt.rows[ia].data();
      return (1.0 - a) * row[j] + a * row[j + 1];
    };
    for (int p = 0; p < n_angles / 2; ++p) {
      const int ia = p, ib = n_angles - 1 - p;
      const double ca = std::cos(sino.angles[ia]), sa = std::sin(sino.angles[ia]);
      const double cb = std::cos(sino.angles[ib]), sb = std::sin(sino.angles[ib]);
      const double* row_a = filt.rows[ia].data();
      const double* row_b = filt.rows[ib].data();
      const double base_a = (img.coord(0) * ca + y * sa - s0) * inv_ds;
      const double base_b = (img.coord(0) * cb + y * sb - s0) * inv_ds;
      const double step_a = img.spacing() * ca * inv_ds;
      const double step_b = img.spacing() * cb * inv_ds;
      for (int ix = 0; ix < n; ++ix) {
        double pair = 0.0;
        const double fa = base_a + step_a * ix;
        if (fa >= 0.0 && fa <= n_off - 1) {
          int j = static_cast<int>(fa);
          if (j >= n_off - 1) j = n_off - 2;
          const double a = fa - j;
          pair += (1.0 - a) * row_a[j] + a * row_a[j + 1];
        }
        const double fb = base_b + step_b * ix;
        if (fb >= 0.0 && fb <= n_off - 1) {
          int j = static_cast<int>(fb);
          if (j >= n_off - 1) j = n_off - 2;
          const double a = fb - j;
          pair += (1.0 - a) * row_b[j] + a * row_b[j + 1];
        }
        out_row[ix] += pair;
      }
    }
    if (n_angles % 2 == 1) {
      for (int ix = 0; ix < n; ++ix) out_row[ix] += term(n_angles / 2, ix);
    }
    for (int ix = 0; ix < n; ++ix) out_row[ix] *= filt.weight;
  }
  return img;
}

std::vector<double> reconstruct_at_points(const Sinogram& sino, const ReconSpec& spec,
                                          const std::vector<Vec2>& points) {
  const FilteredSinogram filt = filter_all_rows(sino, spec);
  std::vector<double> out(points.size());
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = backproject_point(filt, points[i]);
  return out;
}

}  // namespace latomo

#pragma once

#include <vector>

#include "latomo/apodization.hpp"
#include "latomo/phantom.hpp"
#include "latomo/sinogram.hpp"

namespace latomo {

/// Reconstruction operator selection.
///   m = 0: |tau| filter (inversion-type),  m = 1: -d^2/ds^2 (edge-sharpening).
/// cutoff is the band limit in cycles per scene unit (0 = grid Nyquist only),
/// tapered by a raised cosine over [cutoff*(1-rolloff), cutoff].
struct ReconSpec {
  int m = 0;
  Apodization apod;
  double cutoff = 0.0;
  double rolloff = 0.25;
};

void validate_recon_spec(const ReconSpec& spec);

/// Filters every sinogram row (kappa weight, spectral filter, band
/// limit), then backprojects with angle quadrature weight dphi, doubled
/// for the antipodal half of the wedge; linear interpolation in s.
ImageGrid reconstruct(const Sinogram& sino, const ReconSpec& spec, int n, double extent = 1.0);

/// Same pipeline evaluated at arbitrary points instead of a raster.
std::vector<double> reconstruct_at_points(const Sinogram& sino, const ReconSpec& spec,
                                          const std::vector<Vec2>& points);

}  // namespace latomo

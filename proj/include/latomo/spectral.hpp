#pragma once

#include <complex>
#include <vector>

#include "latomo/recon.hpp"

namespace latomo {

/// 2-D Fourier transform of one ellipse under the 1/(2 pi) convention:
///   f_hat(xi) = density * a * b * J1(|A^T xi|)/|A^T xi| * exp(-i c . xi).
/// For the unit disk at the origin this is J1(|xi|)/|xi|, with limit 1/2.
std::complex<double> ellipse_fourier(const Ellipse& e, Vec2 xi);

/// Evaluates the reconstruction operator applied to the phantom at
/// uniform samples along anchor +- halflen * direction, by polar
/// quadrature of the multiplier against the closed-form phantom
/// spectrum over the truncated wedge {|xi| <= 2 pi cutoff, direction
/// in the closed wedge}. Independent of the sinogram/backprojection
/// pipeline; spec.cutoff must be positive.
///
/// Samples sit at s_i = -halflen + (i + 1/2) * (2 halflen / n_samples),
/// so reversing the direction reverses the sample list exactly.
std::vector<double> spectral_profile(const Phantom& phantom, const ReconSpec& spec, Vec2 anchor,
                                     Vec2 direction, double halflen, int n_samples);

/// Sample positions used by spectral_profile (offsets along direction).
std::vector<double> profile_offsets(double halflen, int n_samples);

}  // namespace latomo

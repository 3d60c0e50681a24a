#pragma once

#include <functional>
#include <vector>

#include "latomo/common.hpp"

namespace latomo {

/// Applies a real, even Fourier multiplier to a uniformly sampled row:
/// zero-pad to >= 2x the next power of two, DFT, multiply bin b by
/// multiplier(nu_b) with nu_b the signed physical frequency in cycles
/// per unit, inverse DFT, truncate. Output imaginary residual is
/// checked against 1e-10 of the output scale.
std::vector<double> apply_fourier_multiplier(const std::vector<double>& row, double ds,
                                             const std::function<double(double)>& multiplier);

/// Lambda filter: multiply by |tau| (angular frequency), DC bin 0.
std::vector<double> filter_lambda(const std::vector<double>& row, double ds);

/// Second-derivative filter -d^2/ds^2: multiply by tau^2.
std::vector<double> filter_d2(const std::vector<double>& row, double ds);

}  // namespace latomo

#pragma once

#include <string>

#include "latomo/phantom.hpp"
#include "latomo/sinogram.hpp"

namespace latomo {

/// Raster container: one ASCII header line
///   LATG1 <rows> <cols> <x0> <y0> <dx> <dy>\n
/// followed by rows*cols IEEE-754 binary64 little-endian values,
/// row-major. Sinograms use
///   LATS1 <n_angles> <n_offsets> <phi0> <dphi> <s0> <ds>\n
/// with the same payload convention. Round-trips are bit-exact.
void write_image(const std::string& path, const ImageGrid& img);
ImageGrid read_image(const std::string& path);

void write_sinogram(const std::string& path, const Sinogram& sino);
Sinogram read_sinogram(const std::string& path);

}  // namespace latomo

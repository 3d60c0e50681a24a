#include "latomo/filters.hpp"

#include <cmath>
#include <complex>

#include "latomo/fft.hpp"

namespace latomo {

std::vector<double> apply_fourier_multiplier(const std::vector<double>& row, double ds,
                                             const std::function<double(double)>& multiplier) {
  const std::size_t len = row.size();
  require(len >= 16, "filter: row must have at least 16 samples");
  require(ds > 0.0, "filter: sample spacing must be positive");
  for (double v : row) {
    if (!std::isfinite(v)) throw ValidationError("filter: non-finite input sample");
  }
  const std::size_t n = 2 * next_pow2(len);
  std::vector<std::complex<double>> buf(n, {0.0, 0.0});
  for (std::size_t i = 0; i < len; ++i) buf[i] = row[i];
  fft_pow2(buf, -1);
  const double dnu = 1.0 / (static_cast<double>(n) * ds);
  // project onto conjugate-symmetric spectra (the transform of a real
  // row) before scaling; the multiplier can amplify the rounding
  // asymmetry by the squared Nyquist frequency otherwise
  for (std::size_t b = 1; b < n / 2; ++b) {
    const std::complex<double> sym = 0.5 * (buf[b] + std::conj(buf[n - b]));
    buf[b] = sym;
    buf[n - b] = std::conj(sym);
  }
  for (std::size_t b = 0; b < n; ++b) {
    const double nu = (b <= n / 2 ? static_cast<double>(b) : static_cast<double>(b) - n) * dnu;
    buf[b] *= multiplier(nu);
  }
  ifft_pow2(buf);
  std::vector<double> out(len);
  double max_abs = 0.0, max_imag = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = buf[i].real();
    max_abs = std::max(max_abs, std::fabs(out[i]));
    max_imag = std::max(max_imag, std::fabs(buf[i].imag()));
  }
  if (max_imag > 1e-10 * (max_abs + 1.0)) {
    throw std::runtime_error("filter: imaginary residual exceeds tolerance");
  }
  return out;
}

std::vector<double> filter_lambda(const std::vector<double>& row, double ds) {
  return apply_fourier_multiplier(row, ds, [](double nu) { return kTwoPi * std::fabs(nu); });
}

std::vector<double> filter_d2(const std::vector<double>& row, double ds) {
  return apply_fourier_multiplier(row, ds, [](double nu) {
    const double t = kTwoPi * nu;
    return t * t;
  });
}

}  // namespace latomo

#include "latomo/apodization.hpp"

#include <cmath>

namespace latomo {

void validate_apodization(const Apodization& apod) {
  validate_angular_range(AngularRange{apod.phi});
  require(apod.k >= 0, "apodization order k must be >= 0");
}

double kappa_eval(const Apodization& apod, double u) {
  validate_apodization(apod);
  require(u >= 0.0 && u <= kPi / 2.0 + 1e-12,
          "kappa_eval: angle to axis must lie in [0, pi/2]");
  if (u > apod.phi) return 0.0;
  if (apod.k == 0) return 1.0;
  const double cu = std::cos(u), cp = std::cos(apod.phi), sp = std::sin(apod.phi);
  const double base = (cu * cu - cp * cp) / (sp * sp);
  return std::pow(base, apod.k);
}

double kappa_edge_derivative(const Apodization& apod) {
  validate_apodization(apod);
  double fact = 1.0;
  for (int j = 2; j <= apod.k; ++j) fact *= j;
  const double g = 2.0 / std::tan(apod.phi);
  const double sign = (apod.k % 2 == 0) ? 1.0 : -1.0;
  return sign * fact * std::pow(g, apod.k);
}

}  // namespace latomo

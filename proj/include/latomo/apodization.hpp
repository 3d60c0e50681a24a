#pragma once

#include "latomo/common.hpp"
#include "latomo/sinogram.hpp"

namespace latomo {

/// Angular weight kappa on the wedge, vanishing to order exactly k at
/// the wedge edges:
///   kappa(u) = ((cos^2 u - cos^2 phi) / sin^2 phi)^k,  u = angle to the axis.
/// It is 1 on the axis, even, antipodally symmetric, and polynomial in
/// the direction vector, and its edge derivatives are available in
/// closed form. k = 0 gives the unweighted wedge (kappa == 1).
struct Apodization {
  double phi = 0.0;
  int k = 0;
};

void validate_apodization(const Apodization& apod);

/// kappa as a function of the unsigned angular distance u in [0, pi/2]
/// from the wedge axis. Returns 0 for u > phi.
double kappa_eval(const Apodization& apod, double angle_to_axis);

/// k-th one-sided derivative of kappa(angle) at the wedge edge:
/// (-1)^k k! (2 cot phi)^k. Exact, since kappa has a k-fold zero there
/// with inner derivative -2 cot phi.
double kappa_edge_derivative(const Apodization& apod);

}  // namespace latomo

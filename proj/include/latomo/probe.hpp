#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "latomo/recon.hpp"

namespace latomo {

/// Wedge-edge frame: e is the edge ray direction, e_perp is e rotated
/// by +pi/2. j = 1 is the upper edge (cos phi, sin phi), j = 2 the
/// lower edge (cos phi, -sin phi).
struct EdgeFrame {
  int j = 1;
  Vec2 e;
  Vec2 e_perp;
};

EdgeFrame make_edge_frame(int j, double phi);

/// Operator multiplier |xi|^m kappa(xi/|xi|) chi(xi), chi the indicator
/// of the closed wedge. No band limit; xi in angular frequency.
double multiplier(Vec2 xi, const ReconSpec& spec);

/// Partial symbol of the operator kernel along the edge frame:
///
///   A(t, tau) = int m_loc(tau e + eta e_perp) exp(-i t eta) deta,
///
/// where m_loc is the multiplier times a smooth angular localizer that
/// is 1 within localizer_width/2 of the edge ray and 0 beyond
/// localizer_width. tau is given in cycles per scene unit and converted
/// to angular frequency internally. Adaptive quadrature at 1e-9
/// relative tolerance; non-convergence throws QuadratureError.
std::complex<double> partial_symbol(const EdgeFrame& frame, double t, double tau,
                                    const ReconSpec& spec, double localizer_width);

/// Leading integration-by-parts term of A:
///
///   P(t, tau) = psi_k0 / (i t_signed)^(k+1) * tau_ang^(m-k),
///
/// with psi_k0 = (-1)^k kappa_edge_derivative and t_signed = -t for
/// j = 1, +t for j = 2 (the wedge interior sits on the eta < 0 side of
/// the upper edge and the eta > 0 side of the lower one).
std::complex<double> predicted_symbol(const EdgeFrame& frame, double t, double tau,
                                      const ReconSpec& spec);

/// Principal symbol in the kernel's oscillatory-integral normalization:
/// sigma0 = P / sqrt(2 pi).
std::complex<double> predicted_sigma0(const EdgeFrame& frame, double t, double tau,
                                      const ReconSpec& spec);

struct SymbolProbe {
  EdgeFrame frame;
  double t = 0.0;
  std::vector<double> tau_grid;                // cycles per scene unit, ascending
  std::vector<std::complex<double>> computed;  // A per tau
  std::vector<std::complex<double>> predicted; // P per tau
  double mean_abs_ratio_err = 0.0;             // mean |A/P - 1|
  double max_abs_ratio_err = 0.0;
  double slope = 0.0;                          // fitted d log|A| / d log tau
  double expected_slope = 0.0;                 // m - k
};

/// Computes A and P on a geometric tau grid for each offset t, fits the
/// log-log slope of |A|, and reports ratio statistics. The tau window
/// must span at least one decade.
std::vector<SymbolProbe> symbol_ratio_scan(const EdgeFrame& frame,
                                           const std::vector<double>& t_list, double tau_lo,
                                           double tau_hi, int n_tau, const ReconSpec& spec,
                                           double localizer_width);

/// CSV columns: j,t,tau,re_A,im_A,re_P,im_P,abs_ratio
void write_probe_csv(std::ostream& out, const std::vector<SymbolProbe>& probes);

}  // namespace latomo

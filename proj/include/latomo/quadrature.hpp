#pragma once

#include <algorithm>
#include <complex>
#include <queue>
#include <stdexcept>
#include <vector>

#include "latomo/common.hpp"

namespace latomo {

/// Thrown when the adaptive integrator cannot hit its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

namespace gk {

// Gauss 7 / Kronrod 15 pair on [-1, 1].
inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace gk

/// One G7/K15 panel. Returns the K15 value, writes |K15 - G7| to err.
template <typename F>
std::complex<double> gk15_panel(const F& f, double a, double b, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::complex<double> ik(0.0, 0.0), ig(0.0, 0.0);
  for (int i = 0; i < 8; ++i) {
    const double x = gk::kNodes[i];
    std::complex<double> v = f(c + h * x);
    if (i < 7) v += f(c - h * x);  // i == 7 is the single center node
    ik += gk::kWeightsK[i] * v;
    if (i % 2 == 1) ig += gk::kWeightsG[i / 2] * v;  // Gauss nodes sit at i = 1,3,5,7
  }
  ik *= h;
  ig *= h;
  err = std::abs(ik - ig);
  return ik;
}

/// Adaptive complex-valued integration of f over [a, b].
/// init_panels seeds the subdivision (use >= phase span / 3 for oscillatory f).
template <typename F>
std::complex<double> integrate_adaptive(const F& f, double a, double b, double rel_tol,
                                        int init_panels, int max_panels = 200000) {
  struct Panel {
    double a, b, err;
    std::complex<double> val;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  init_panels = std::clamp(init_panels, 1, max_panels / 2);
  std::priority_queue<Panel> panels;
  std::complex<double> total(0.0, 0.0);
  double total_err = 0.0;
  const double w = (b - a) / init_panels;
  for (int i = 0; i < init_panels; ++i) {
    Panel p;
    p.a = a + i * w;
    p.b = (i + 1 == init_panels) ? b : a + (i + 1) * w;
    p.val = gk15_panel(f, p.a, p.b, p.err);
    total += p.val;
    total_err += p.err;
    panels.push(p);
  }
  int n = init_panels;
  while (total_err > rel_tol * std::max(std::abs(total), 1e-300)) {
    if (n >= max_panels) {
      throw QuadratureError("integrate_adaptive: no convergence after " +
                            std::to_string(n) + " panels (err " +
                            std::to_string(total_err) + ")");
    }
    Panel p = panels.top();
    panels.pop();
    total -= p.val;
    total_err -= p.err;
    const double mid = 0.5 * (p.a + p.b);
    for (int half = 0; half < 2; ++half) {
      Panel q;
      q.a = half == 0 ? p.a : mid;
      q.b = half == 0 ? mid : p.b;
      q.val = gk15_panel(f, q.a, q.b, q.err);
      total += q.val;
      total_err += q.err;
      panels.push(q);
    }
    ++n;
  }
  return total;
}

}  // namespace latomo

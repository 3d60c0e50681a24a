#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace latomo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Bad user input (CLI maps this to exit code 1).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {x * c, y * c}; }
  Vec2 operator-() const { return {-x, -y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  /// Rotation by +pi/2.
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

/// Raised-cosine low-pass: 1 below cutoff*(1-rolloff), 0 above cutoff.
/// Frequencies in cycles per scene unit.
inline double lowpass_taper(double freq, double cutoff, double rolloff) {
  const double f = std::fabs(freq);
  if (cutoff <= 0.0) return 1.0;  // no explicit band limit
  const double knee = cutoff * (1.0 - rolloff);
  if (f <= knee) return 1.0;
  if (f >= cutoff) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (f - knee) / (cutoff - knee)));
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Least squares y = slope*x + intercept.
template <typename It>
LineFit fit_line(It x_begin, It x_end, It y_begin) {
  const long n = x_end - x_begin;
  if (n < 2) throw ValidationError("fit_line: need at least 2 points");
  double sx = 0, sy = 0;
  for (long i = 0; i < n; ++i) {
    sx += x_begin[i];
    sy += y_begin[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (long i = 0; i < n; ++i) {
    const double dx = x_begin[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y_begin[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (long i = 0; i < n; ++i) {
    const double r = y_begin[i] - (fit.slope * x_begin[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace latomo

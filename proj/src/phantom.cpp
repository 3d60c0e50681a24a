#include "latomo/phantom.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace latomo {

namespace {

Vec2 rotate(Vec2 v, double ang) {
  const double c = std::cos(ang), s = std::sin(ang);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace

double Ellipse::quadratic_form(Vec2 x) const {
  const Vec2 d = rotate(x - center, -tilt);
  const double u = d.x / a, v = d.y / b;
  return u * u + v * v;
}

Vec2 Ellipse::boundary_point_with_normal(Vec2 n) const {
  const Vec2 w = rotate(n, -tilt);
  const Vec2 local{a * a * w.x, b * b * w.y};
  const double lam = 1.0 / std::sqrt(a * a * w.x * w.x + b * b * w.y * w.y);
  return center + rotate(local * lam, tilt);
}

Vec2 Ellipse::boundary_point(double t) const {
  return center + rotate({a * std::cos(t), b * std::sin(t)}, tilt);
}

Vec2 Ellipse::outward_normal(double t) const {
  const Vec2 n = rotate({std::cos(t) / a, std::sin(t) / b}, tilt);
  const double len = n.norm();
  return {n.x / len, n.y / len};
}

void validate_ellipse(const Ellipse& e) {
  require(std::isfinite(e.center.x) && std::isfinite(e.center.y), "ellipse center not finite");
  require(e.a > 0.0 && e.b > 0.0, "ellipse semi-axes must be positive");
  require(e.a >= e.b, "ellipse semi-axes must satisfy a >= b (rotate tilt by pi/2 instead)");
  require(e.tilt >= 0.0 && e.tilt < kPi, "ellipse tilt must lie in [0, pi)");
  require(std::isfinite(e.density), "ellipse density not finite");
  // axis-aligned extents of the rotated ellipse
  const double c = std::cos(e.tilt), s = std::sin(e.tilt);
  const double wx = std::sqrt(e.a * e.a * c * c + e.b * e.b * s * s);
  const double wy = std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
  require(std::fabs(e.center.x) + wx <= kSceneHalfWidth + 1e-12 &&
              std::fabs(e.center.y) + wy <= kSceneHalfWidth + 1e-12,
          "ellipse exceeds the scene square [-1,1]^2");
}

void validate_phantom(const Phantom& p) {
  require(!p.ellipses.empty(), "phantom has no ellipses");
  for (const auto& e : p.ellipses) validate_ellipse(e);
}

double point_value(const Phantom& phantom, Vec2 x) {
  require(std::isfinite(x.x) && std::isfinite(x.y), "point_value: non-finite point");
  double sum = 0.0;
  for (const auto& e : phantom.ellipses) {
    if (e.quadratic_form(x) <= 1.0) sum += e.density;
  }
  return sum;
}

double ImageGrid::bilinear(Vec2 p) const {
  const double d = spacing();
  const double fx = (p.x + extent) / d;
  const double fy = (p.y + extent) / d;
  if (fx < 0.0 || fy < 0.0 || fx > n - 1 || fy > n - 1) return 0.0;
  int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
  if (ix >= n - 1) ix = n - 2;
  if (iy >= n - 1) iy = n - 2;
  const double ax = fx - ix, ay = fy - iy;
  return (1 - ay) * ((1 - ax) * at(iy, ix) + ax * at(iy, ix + 1)) +
         ay * ((1 - ax) * at(iy + 1, ix) + ax * at(iy + 1, ix + 1));
}

ImageGrid rasterize(const Phantom& phantom, int n, double extent, int supersample) {
  validate_phantom(phantom);
  require(n >= 2, "rasterize: n must be >= 2");
  require(supersample >= 1, "rasterize: supersample must be >= 1");
  require(n <= kMaxRasterSide && static_cast<long>(n) * supersample <= kMaxSamplesPerAxis,
          "rasterize: n * supersample exceeds the raster budget");
  require(extent > 0.0, "rasterize: extent must be positive");

  ImageGrid img;
  img.n = n;
  img.extent = extent;
  img.values.assign(static_cast<size_t>(n) * n, 0.0);
  const double d = img.spacing();
  const double inv = 1.0 / (supersample * supersample);

  const double sub = d / supersample;
  auto sub_offset = [&](int s) { return (s - 0.5 * (supersample - 1)) * sub; };

#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < n; ++iy) {
    const double y0 = img.coord(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double x0 = img.coord(ix);
      // sub-rows summed in mirror pairs so a vertically symmetric
      // phantom rasterizes to an exactly mirror-symmetric grid
      auto row_sum = [&](int sy) {
        const double y = y0 + sub_offset(sy);
        double acc = 0.0;
        for (int sx = 0; sx < supersample; ++sx) {
          acc += point_value(phantom, {x0 + sub_offset(sx), y});
        }
        return acc;
      };
      double acc = 0.0;
      for (int sy = 0; sy < supersample / 2; ++sy) {
        acc += row_sum(sy) + row_sum(supersample - 1 - sy);
      }
      if (supersample % 2 == 1) acc += row_sum(supersample / 2);
      img.at(iy, ix) = acc * inv;
    }
  }
  return img;
}

Phantom parse_phantom_text(const std::string& text, const std::string& name) {
  Phantom p;
  p.name = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Ellipse e;
    if (!(ls >> e.center.x)) continue;  // blank or comment-only line
    if (!(ls >> e.center.y >> e.a >> e.b >> e.tilt >> e.density)) {
      throw ValidationError("phantom line " + std::to_string(lineno) +
                            ": expected `cx cy a b tilt_rad density`");
    }
    double extra;
    if (ls >> extra) {
      throw ValidationError("phantom line " + std::to_string(lineno) + ": trailing fields");
    }
    validate_ellipse(e);
    p.ellipses.push_back(e);
  }
  validate_phantom(p);
  return p;
}

Phantom load_phantom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open phantom file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos) stem.erase(dot);
  return parse_phantom_text(ss.str(), stem);
}

std::string format_phantom_text(const Phantom& p) {
  std::ostringstream out;
  out.precision(17);
  out << "# cx cy a b tilt_rad density\n";
  for (const auto& e : p.ellipses) {
    out << e.center.x << ' ' << e.center.y << ' ' << e.a << ' ' << e.b << ' ' << e.tilt << ' '
        << e.density << '\n';
  }
  return out.str();
}

Phantom default_disk_phantom() {
  Phantom p;
  p.name = "disk";
  p.ellipses.push_back(Ellipse{{0.2, 0.0}, 0.5, 0.5, 0.0, 1.0});
  return p;
}

}  // namespace latomo

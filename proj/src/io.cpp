#include "latomo/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace latomo {

static_assert(std::endian::native == std::endian::little,
              "raster payload is little-endian binary64");

namespace {

std::string format_header(const char* magic, long rows, long cols, double a, double b, double c,
                          double d) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s %ld %ld %.17g %.17g %.17g %.17g\n", magic, rows, cols, a, b,
                c, d);
  return buf;
}

void write_payload(std::ofstream& out, const std::vector<double>& values,
                   const std::string& path) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("write " + path + ": non-finite value in payload");
    }
  }
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write " + path + ": short write");
}

struct Header {
  long rows = 0, cols = 0;
  double f[4] = {0, 0, 0, 0};
};

Header read_header(std::ifstream& in, const char* magic, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read " + path + ": missing header");
  std::istringstream hs(line);
  std::string got;
  Header h;
  if (!(hs >> got >> h.rows >> h.cols >> h.f[0] >> h.f[1] >> h.f[2] >> h.f[3])) {
    throw std::runtime_error("read " + path + ": malformed header");
  }
  if (got != magic) {
    throw std::runtime_error("read " + path + ": bad magic `" + got + "`, expected `" + magic +
                             "`");
  }
  std::string extra;
  if (hs >> extra) throw std::runtime_error("read " + path + ": trailing header fields");
  if (h.rows <= 0 || h.cols <= 0) throw std::runtime_error("read " + path + ": bad dimensions");
  for (double v : h.f) {
    if (!std::isfinite(v)) throw std::runtime_error("read " + path + ": non-finite header value");
  }
  return h;
}

std::vector<double> read_payload(std::ifstream& in, long rows, long cols,
                                 const std::string& path) {
  const std::size_t count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<double> values(count);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got != count * sizeof(double)) {
    throw std::runtime_error("read " + path + ": payload has " + std::to_string(got) +
                             " bytes, expected " + std::to_string(count * sizeof(double)));
  }
  char probe;
  if (in.read(&probe, 1)) {
    throw std::runtime_error("read " + path + ": trailing bytes after payload");
  }
  return values;
}

}  // namespace

void write_image(const std::string& path, const ImageGrid& img) {
  require(img.n >= 2 && img.values.size() == static_cast<size_t>(img.n) * img.n,
          "write_image: malformed grid");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  const double d = img.spacing();
  out << format_header("LATG1", img.n, img.n, -img.extent, -img.extent, d, d);
  write_payload(out, img.values, path);
}

ImageGrid read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  const Header h = read_header(in, "LATG1", path);
  if (h.rows != h.cols) throw std::runtime_error("read " + path + ": image must be square");
  ImageGrid img;
  img.n = static_cast<int>(h.rows);
  img.extent = -h.f[0];
  if (img.extent <= 0.0 || std::fabs(h.f[1] + img.extent) > 1e-12 ||
      std::fabs(h.f[2] - img.spacing()) > 1e-12 || std::fabs(h.f[3] - h.f[2]) > 1e-15) {
    throw std::runtime_error("read " + path + ": unsupported grid layout");
  }
  img.values = read_payload(in, h.rows, h.cols, path);
  return img;
}

void write_sinogram(const std::string& path, const Sinogram& sino) {
  require(!sino.angles.empty() && !sino.offsets.empty() &&
              sino.values.size() == sino.angles.size() * sino.offsets.size(),
          "write_sinogram: malformed sinogram");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << format_header("LATS1", static_cast<long>(sino.angles.size()),
                       static_cast<long>(sino.offsets.size()), sino.angles.front(), sino.dphi,
                       sino.offsets.front(), sino.ds);
  write_payload(out, sino.values, path);
}

Sinogram read_sinogram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  const Header h = read_header(in, "LATS1", path);
  const double phi0 = h.f[0], dphi = h.f[1], s0 = h.f[2], ds = h.f[3];
  Sinogram sino;
  // full grids start exactly at 0; limited grids are half-bin offset from -phi
  if (phi0 == 0.0) {
    sino.kind = SinogramKind::Full;
  } else {
    sino.kind = SinogramKind::Limited;
    sino.phi = -phi0 + 0.5 * dphi;
    if (sino.phi <= 0.0 || sino.phi >= kPi / 2.0) {
      throw std::runtime_error("read " + path + ": inconsistent wedge angles");
    }
  }
  sino.dphi = dphi;
  sino.ds = ds;
  sino.angles.resize(h.rows);
  for (long i = 0; i < h.rows; ++i) sino.angles[i] = phi0 + i * dphi;
  sino.offsets.resize(h.cols);
  for (long j = 0; j < h.cols; ++j) sino.offsets[j] = s0 + j * ds;
  sino.values = read_payload(in, h.rows, h.cols, path);
  return sino;
}

}  // namespace latomo

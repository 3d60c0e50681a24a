#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "latomo/io.hpp"
#include "latomo/recon.hpp"

using namespace latomo;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/latomo_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("image round trip is bit exact") {
  TempFile f("img.latg");
  ImageGrid img;
  img.n = 37;
  img.extent = 1.25;
  img.values.resize(37 * 37);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (auto& v : img.values) v = u(rng);
  write_image(f.path, img);
  const ImageGrid back = read_image(f.path);
  CHECK(back.n == img.n);
  CHECK(back.extent == img.extent);
  for (std::size_t i = 0; i < img.values.size(); ++i) CHECK(back.values[i] == img.values[i]);

  write_image(f.path, img);
  const std::string once = slurp(f.path);
  write_image(f.path, img);
  CHECK(slurp(f.path) == once);
}

TEST_CASE("sinogram round trip keeps the wedge") {
  TempFile f("sino.lats");
  const Phantom disk = default_disk_phantom();
  const Sinogram sino = radon_phantom(disk, AngularRange{0.9}, 18, 64);
  write_sinogram(f.path, sino);
  const Sinogram back = read_sinogram(f.path);
  CHECK(back.kind == SinogramKind::Limited);
  CHECK(back.phi == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(back.ds == sino.ds);
  CHECK(back.dphi == sino.dphi);
  for (std::size_t i = 0; i < sino.values.size(); ++i) CHECK(back.values[i] == sino.values[i]);

  const Sinogram full = radon_phantom(disk, std::nullopt, 12, 64);
  write_sinogram(f.path, full);
  CHECK(read_sinogram(f.path).kind == SinogramKind::Full);
}

TEST_CASE("reader rejects malformed files") {
  TempFile f("bad.latg");
  {
    std::ofstream out(f.path, std::ios::binary);
    out << "LATG2 2 2 -1 -1 2 2\n";
    const double v[4] = {1, 2, 3, 4};
    out.write(reinterpret_cast<const char*>(v), sizeof(v));
  }
  CHECK_THROWS_WITH_AS(read_image(f.path), doctest::Contains("bad magic"), std::runtime_error);

  ImageGrid img;
  img.n = 4;
  img.extent = 1.0;
  img.values.assign(16, 1.0);
  write_image(f.path, img);
  {
    // drop the last 8 bytes
    const std::string all = slurp(f.path);
    std::ofstream out(f.path, std::ios::binary);
    out.write(all.data(), static_cast<std::streamsize>(all.size() - 8));
  }
  CHECK_THROWS_WITH_AS(read_image(f.path), doctest::Contains("expected"), std::runtime_error);

  img.values[3] = std::nan("");
  CHECK_THROWS_AS(write_image(f.path, img), std::runtime_error);
}

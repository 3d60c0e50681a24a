#include <cmath>
#include <random>

#include "doctest.h"
#include "latomo/sinogram.hpp"

using namespace latomo;

namespace {

Ellipse unit_disk_e() { return Ellipse{{0.0, 0.0}, 1.0, 1.0, 0.0, 1.0}; }

}  // namespace

TEST_CASE("radon of a disk") {
  const Ellipse e = unit_disk_e();
  CHECK(radon_ellipse(e, {1.0, 0.0}, 0.0) == doctest::Approx(2.0));
  CHECK(radon_ellipse(e, {0.0, 1.0}, 0.6) == doctest::Approx(1.6));  // 2 sqrt(1 - 0.36)
  CHECK(radon_ellipse(e, {1.0, 0.0}, 1.2) == 0.0);
  CHECK_THROWS_AS(radon_ellipse(e, {1.0, 0.5}, 0.0), ValidationError);
}

TEST_CASE("radon of a tilted ellipse against the raster oracle") {
  const Ellipse e{{0.15, -0.1}, 0.5, 0.2, 0.7, 1.25};
  Phantom p;
  p.ellipses.push_back(e);
  const ImageGrid img = rasterize(p, 1024, 1.0, 2);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ang(0.0, kPi), off(-0.8, 0.8);
  for (int i = 0; i < 12; ++i) {
    const Vec2 theta = unit_vector(ang(rng));
    const double s = off(rng);
    const double exact = radon_ellipse(e, theta, s);
    const double numeric = radon_numeric(img, theta, s, img.spacing() / 2.0);
    CHECK(std::fabs(exact - numeric) < 0.02);
  }
}

TEST_CASE("radon evenness is exact") {
  const Ellipse e{{0.3, 0.12}, 0.45, 0.3, 1.2, 0.8};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi), off(-1.4, 1.4);
  for (int i = 0; i < 200; ++i) {
    const Vec2 theta = unit_vector(ang(rng));
    const double s = off(rng);
    CHECK(radon_ellipse(e, theta, s) == radon_ellipse(e, -theta, -s));
  }
}

TEST_CASE("radon translation covariance") {
  Ellipse e{{0.0, 0.1}, 0.4, 0.2, 0.5, 1.0};
  const Vec2 v{0.2, -0.3};
  Ellipse shifted = e;
  shifted.center = e.center + v;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi), off(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec2 theta = unit_vector(ang(rng));
    const double s = off(rng);
    CHECK(radon_ellipse(shifted, theta, s) ==
          doctest::Approx(radon_ellipse(e, theta, s - v.dot(theta))).epsilon(1e-12));
  }
}

TEST_CASE("radon_phantom grids and values") {
  Phantom zero;
  zero.ellipses.push_back(Ellipse{{0.0, 0.0}, 0.5, 0.5, 0.0, 0.0});
  const Sinogram z = radon_phantom(zero, std::nullopt, 8, 33);
  for (double v : z.values) CHECK(v == 0.0);
  CHECK(z.kind == SinogramKind::Full);
  CHECK(z.angles.front() == 0.0);

  Phantom disk;
  disk.ellipses.push_back(unit_disk_e());
  const Sinogram s = radon_phantom(disk, std::nullopt, 16, 129);
  for (int ia = 0; ia < 16; ++ia) {
    double row_max = 0.0;
    for (int is = 0; is < 129; ++is) row_max = std::max(row_max, s.at(ia, is));
    CHECK(row_max == doctest::Approx(2.0));  // offset grid contains s = 0
  }

  // mass per angle: area times density within 0.5% by trapezoid rule
  Phantom off = default_disk_phantom();
  const Sinogram so = radon_phantom(off, AngularRange{kPi / 3.0}, 24, 1024);
  for (int ia = 0; ia < 24; ++ia) {
    double mass = 0.0;
    for (int is = 0; is < 1024; ++is) {
      const double w = (is == 0 || is == 1023) ? 0.5 : 1.0;
      mass += w * so.at(ia, is);
    }
    mass *= so.ds;
    CHECK(mass == doctest::Approx(kPi * 0.25).epsilon(0.005));
  }

  // limited grid is odd under angle negation, endpoints excluded
  CHECK(so.kind == SinogramKind::Limited);
  for (int ia = 0; ia < 24; ++ia) CHECK(so.angles[ia] == -so.angles[23 - ia]);
  CHECK(std::fabs(so.angles.front()) < kPi / 3.0);

  CHECK_THROWS_AS(radon_phantom(off, AngularRange{2.0}, 8, 64), ValidationError);
  CHECK_THROWS_AS(radon_phantom(off, std::nullopt, 1, 64), ValidationError);
  CHECK_THROWS_AS(radon_phantom(off, std::nullopt, 8, 8), ValidationError);
}

TEST_CASE("radon_numeric edge cases") {
  ImageGrid img;
  img.n = 32;
  img.extent = 1.0;
  img.values.assign(32 * 32, 0.0);
  CHECK(radon_numeric(img, {1.0, 0.0}, 0.0, img.spacing()) == 0.0);

  Phantom disk;
  disk.ellipses.push_back(unit_disk_e());
  const ImageGrid r = rasterize(disk, 256, 1.0, 2);
  CHECK(radon_numeric(r, {1.0, 0.0}, 2.0, r.spacing()) == 0.0);
  CHECK_THROWS_AS(radon_numeric(r, {1.0, 0.0}, 0.0, 1.0), ValidationError);
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"

using namespace vortexcaps;

namespace {

bool close(const Point3& a, const Point3& b, double tol) {
  return std::abs(a.x - b.x) < tol && std::abs(a.y - b.y) < tol &&
         std::abs(a.z - b.z) < tol;
}

}  // namespace

TEST_CASE("chart_c1 maps axis points and unit vectors") {
  CHECK(close(chart_c1({pi / 2, 0.0}), {1, 0, 0}, 1e-15));
  CHECK(close(chart_c1({pi / 3, pi / 2}), {0, std::sqrt(3.0) / 2, 0.5}, 1e-15));
  CHECK(close(chart_c1({pi / 2, pi}), {-1, 0, 0}, 1e-15));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> t(1e-6, pi - 1e-6), p(0, two_pi);
  for (int i = 0; i < 1000; ++i) {
    CHECK(std::abs(norm(chart_c1({t(rng), p(rng)})) - 1.0) < 1e-12);
  }
}

TEST_CASE("chart_c1 rejects poles") {
  CHECK_THROWS_AS(chart_c1({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(chart_c1({pi, 1.0}), DomainError);
  CHECK_THROWS_AS(chart_c1({-0.1, 1.0}), DomainError);
}

TEST_CASE("wrap_longitude reduces to [0, 2 pi)") {
  CHECK(wrap_longitude(-0.5) == doctest::Approx(two_pi - 0.5).epsilon(1e-15));
  CHECK(wrap_longitude(two_pi + 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(wrap_longitude(two_pi) == 0.0);
}

TEST_CASE("chordal_d examples") {
  CHECK(chordal_d(0.7, 0.7, 1.3, 1.3) == 0.0);
  CHECK(chordal_d(pi / 2, pi / 2, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(chordal_d(pi / 3, 2 * pi / 3, 0.0, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(chordal_d_direct(pi / 3, 2 * pi / 3, 0.0, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("chordal_d: both forms agree and D vanishes only at coincidence") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(1e-3, pi - 1e-3), p(0, two_pi);
  for (int i = 0; i < 10000; ++i) {
    const double a = t(rng), b = t(rng), u = p(rng), v = p(rng);
    const double d = chordal_d(a, b, u, v);
    CHECK(d >= 0.0);
    CHECK(std::abs(d - chordal_d_direct(a, b, u, v)) < 1e-13);
    // Chordal distance squared over two from Cartesian coordinates.
    const Point3 x = chart_c1({a, u}), y = chart_c1({b, v});
    const double dx = x.x - y.x, dy = x.y - y.y, dz = x.z - y.z;
    CHECK(std::abs(d - 0.5 * (dx * dx + dy * dy + dz * dz)) < 1e-13);
    if (std::abs(a - b) > 1e-6) CHECK(d > 0.0);
  }
}

TEST_CASE("green_kernel values, symmetry and singularity") {
  CHECK(std::abs(green_kernel(pi / 2, pi / 2, 0.0, pi)) < 1e-16);
  // D = 1 at a quarter turn along the equator.
  CHECK(green_kernel(pi / 2, pi / 2, 0.0, pi / 2) ==
        doctest::Approx(-std::log(2.0) / (4 * pi)).epsilon(1e-14));
  CHECK(green_kernel(pi / 3, 2 * pi / 3, 0.0, 0.0) ==
        doctest::Approx(-std::log(4.0) / (4 * pi)).epsilon(1e-14));
  CHECK(green_kernel(pi / 3, 2 * pi / 3, 0.0, 0.0) ==
        doctest::Approx(-0.11031780007632579).epsilon(1e-14));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(1e-3, pi - 1e-3), p(0, two_pi);
  for (int i = 0; i < 1000; ++i) {
    const double a = t(rng), b = t(rng), u = p(rng), v = p(rng);
    CHECK(green_kernel(a, b, u, v) == green_kernel(b, a, v, u));
  }
  CHECK_THROWS_AS(green_kernel(1.0, 1.0, 2.0, 2.0), SingularityError);
}

TEST_CASE("rotate_z quarter and half turns, identity and composition") {
  CHECK(close(rotate_z(pi / 2, {1, 0, 0}), {0, 1, 0}, 1e-15));
  CHECK(close(rotate_z(pi, {0, 1, 0}), {0, -1, 0}, 1e-15));
  const Point3 p = chart_c1({0.4, 2.0});
  CHECK(close(rotate_z(two_pi, p), p, 1e-12));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const double a = ang(rng), b = ang(rng);
    const Point3 q = rotate_z(a, rotate_z(b, p));
    CHECK(close(q, rotate_z(a + b, p), 1e-12));
    CHECK(std::abs(norm(q) - norm(p)) < 1e-12);
    CHECK(q.z == p.z);
  }
}

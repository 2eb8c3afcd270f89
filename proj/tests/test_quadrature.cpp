#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/quadrature.hpp"

using namespace vortexcaps;

namespace {

std::vector<double> sample(int n, double (*fn)(double)) {
  std::vector<double> s(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] = fn(two_pi * j / n);
  return s;
}

}  // namespace

TEST_CASE("PeriodicGrid nodes and weights") {
  const PeriodicGrid grid(64);
  const auto nodes = grid.nodes();
  CHECK(nodes.front() == 0.0);
  CHECK(nodes.back() < two_pi);
  for (std::size_t j = 1; j < nodes.size(); ++j) CHECK(nodes[j] > nodes[j - 1]);
  CHECK(grid.weight() * grid.size() == doctest::Approx(two_pi).epsilon(1e-15));
  CHECK_THROWS_AS(PeriodicGrid(63), DomainError);
  CHECK_THROWS_AS(PeriodicGrid(0), DomainError);
}

TEST_CASE("periodic_trapezoid examples") {
  for (int n : {8, 16, 64, 256}) {
    CHECK(std::abs(periodic_trapezoid(sample(n, [](double x) { return std::cos(x); }))) <
          1e-14);
  }
  CHECK(periodic_trapezoid(sample(64, [](double) { return 1.0; })) ==
        doctest::Approx(two_pi).epsilon(1e-15));
  CHECK(periodic_trapezoid(sample(64, [](double x) { return std::cos(x) * std::cos(x); })) ==
        doctest::Approx(pi).epsilon(1e-15));
  CHECK_THROWS_AS(periodic_trapezoid(std::vector<double>{}), DomainError);
}

TEST_CASE("in_closed examples and domain") {
  CHECK(in_closed(3, 1.0, 1.0) == doctest::Approx(-1.0 / 3).epsilon(1e-15));
  CHECK(in_closed(1, pi / 2, pi / 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(in_closed(2, pi / 3, 2 * pi / 3) == doctest::Approx(-1.0 / 18).epsilon(1e-14));
  CHECK_THROWS_AS(in_closed(1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(in_closed(1, 1.0, pi), DomainError);
  CHECK_THROWS_AS(in_closed(0, 1.0, 1.0), DomainError);
}

TEST_CASE("in_closed is symmetric, bounded and decreasing in n") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(1e-3, pi - 1e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = ang(rng), b = ang(rng);
    double previous = std::abs(in_closed(1, a, b));
    for (int n = 1; n <= 40; ++n) {
      const double v = in_closed(n, a, b);
      CHECK(v == in_closed(n, b, a));
      CHECK(v < 0.0);
      CHECK(v >= -1.0 / n);
      if (n > 1) {
        CHECK(std::abs(v) < previous);
        previous = std::abs(v);
      }
    }
  }
}

TEST_CASE("in_oracle examples") {
  CHECK(std::abs(in_oracle(1, pi / 4, 3 * pi / 4, 2048) -
                 in_closed(1, pi / 4, 3 * pi / 4)) < 1e-10);
  CHECK(std::abs(in_oracle(5, 0.3, 2.5, 4096) - in_closed(5, 0.3, 2.5)) < 1e-10);
  CHECK(std::abs(in_oracle(2, pi / 3, 2 * pi / 3, 4096) + 1.0 / 18) < 1e-10);
  CHECK_THROWS_AS(in_oracle(4, 1.0, 2.0, 31), DomainError);
}

TEST_CASE("in_oracle matches in_closed for n <= 32 on random pairs") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(1e-6, pi - 1e-6);
  double worst = 0.0;
  for (int n = 1; n <= 32; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const double a = ang(rng);
      double b = ang(rng);
      while (std::abs(a - b) <= 1e-3) b = ang(rng);
      worst = std::max(worst, std::abs(in_closed(n, a, b) - in_oracle(n, a, b, 4096)));
    }
    const double a = ang(rng);
    CHECK(std::abs(in_oracle(n, a, a, 4096) + 1.0 / n) < 1e-9);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("log_singular_coefficients and multiplier act as -2 pi / k") {
  const std::vector<double> coeffs{0.7, 1.0, 0.0, 0.5, -0.25};
  const auto out = log_singular_coefficients(coeffs);
  CHECK(out[0] == 0.0);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    CHECK(out[k] == doctest::Approx(-two_pi / static_cast<double>(k) * coeffs[k]));
  }
  const PeriodicGrid grid(32);
  const auto constant = log_singular_multiplier(std::vector<double>{1.0}, grid);
  for (double v : constant) CHECK(std::abs(v) < 1e-15);
  const auto c1 = log_singular_multiplier(std::vector<double>{0.0, 1.0}, grid);
  const auto c3 = log_singular_multiplier(std::vector<double>{0, 0, 0, 1.0}, grid);
  for (int j = 0; j < grid.size(); ++j) {
    const double phi = grid.node(j);
    CHECK(c1[static_cast<std::size_t>(j)] == doctest::Approx(-two_pi * std::cos(phi)));
    CHECK(c3[static_cast<std::size_t>(j)] ==
          doctest::Approx(-two_pi / 3 * std::cos(3 * phi)));
  }
}

TEST_CASE("log kernel Fourier action against brute-force quadrature") {
  // Midpoint rule on 1e4 nodes avoids the singular node; the log
  // singularity limits it to about 1e-3 relative.
  const int n = 10000;
  for (int k : {1, 3}) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = two_pi * (j + 0.5) / n;
      const double s = std::sin(0.5 * x);
      sum += std::log(4 * s * s) * std::cos(k * x);
    }
    const double brute = sum * two_pi / n;
    CHECK(std::abs(brute + two_pi / k) < 1e-3 * two_pi / k);
    // a = b = pi/2 turns the I_n integrand into log(4 sin^2(x/2)) - log 2.
    CHECK(std::abs(two_pi * in_oracle(k, pi / 2, pi / 2, 4096) + two_pi / k) < 1e-12);
  }
}

TEST_CASE("log_singular_weights integrate the log kernel exactly") {
  for (int n : {16, 64, 128}) {
    const auto weights = log_singular_weights(n);
    const auto cached = cached_log_singular_weights(n);
    CHECK(*cached == weights);
    for (int k = 0; k < n / 2; ++k) {
      for (int i : {0, 3, n / 2 - 1}) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          s += weights[static_cast<std::size_t>(((i - j) % n + n) % n)] *
               std::cos(k * two_pi * j / n);
        }
        const double expected = k == 0 ? 0.0 : -two_pi / k * std::cos(k * two_pi * i / n);
        CHECK(std::abs(s - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("gauss_legendre examples") {
  CHECK(gauss_legendre([](double x) { return x * x; }, 0.0, 1.0, 4) ==
        doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(std::abs(gauss_legendre([](double x) { return std::sin(x); }, 0.0, pi, 16) - 2.0) <
        1e-12);
  CHECK(std::abs(gauss_legendre([](double x) { return std::sin(x); }, 1.0, 1.1, 8) -
                 (std::cos(1.0) - std::cos(1.1))) < 1e-15);
  const auto rule = gauss_legendre_rule(12);
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  // Exact for polynomials of degree 2 order - 1.
  CHECK(gauss_legendre([](double x) { return std::pow(x, 23); }, 0.0, 1.0, 12) ==
        doctest::Approx(1.0 / 24).epsilon(1e-13));
  CHECK_THROWS_AS(gauss_legendre_rule(1), DomainError);
}

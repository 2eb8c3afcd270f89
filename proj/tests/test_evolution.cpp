#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "vortexcaps/caps.hpp"
#include "vortexcaps/continuation.hpp"
#include "vortexcaps/errors.hpp"
#include "vortexcaps/evolution.hpp"
#include "vortexcaps/fourier.hpp"
#include "vortexcaps/functional.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/spectral.hpp"

using namespace vortexcaps;

namespace {

const FlatCapState hemisphere{pi / 2, 1.0, -1.0, 0.0};
const BandState symmetric{pi / 3, 2 * pi / 3, 1.0, -1.0, 1.0, 0.0};

std::vector<double> grid_samples(int n, double (*fn)(double)) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = fn(2 * pi * j / n);
  return out;
}

double diff_norm(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

// Converged m = 2 hemisphere traveling wave at amplitude eps on n points.
BranchPoint hemisphere_wave(double eps, int n, int modes = 16) {
  ContinuationOptions o;
  o.modes = modes;
  o.n_collocation = n;
  o.both_signs = false;
  const Branch b = branch_one(hemisphere, 2, eps, 1, o);
  return b.points.back();
}

double smooth_start(double phi) {
  return 0.01 * std::cos(2 * phi) + 0.005 * std::sin(3 * phi) + 0.003 * std::cos(phi);
}

ContourSamples run(const ContourSamples& f0, const ZonalProfile& profile, double t_end,
                   double dt, const EvolutionOptions& o = {}) {
  const Trajectory tr = evolve(f0, profile, t_end, dt, o);
  REQUIRE(!tr.aborted);
  return tr.snapshots.back().f;
}

}  // namespace

TEST_CASE("rhs_one vanishes on the flat cap and equals the c = 0 functional") {
  const std::vector<double> zero(128, 0.0);
  CHECK(max_abs(rhs_one(zero, hemisphere)) < 1e-14);
  ContourFourier f = zero_contour(2, 4, 128);
  f.coeffs = {0.02, -0.004, 0.001, 0.0};
  const std::vector<double> r = rhs_one(f.samples(), hemisphere, 2);
  const ResidualField res = functional_one(0.0, f, hemisphere);
  CHECK(diff_norm(r, res.samples) < 1e-14);
}

TEST_CASE("rhs_one on a traveling wave equals -c f'") {
  const BranchPoint p = hemisphere_wave(0.02, 128);
  REQUIRE(p.residual_norm < 1e-10);
  const std::vector<double> f = p.contours[0].samples();
  const std::vector<double> r = rhs_one(f, hemisphere, 2);
  const std::vector<double> df = spectral_derivative(f);
  double err = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) err = std::max(err, std::abs(r[j] + p.c * df[j]));
  CHECK(err < 1e-8);
}

TEST_CASE("rhs of an even m-fold field is odd and m-fold") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  const int n = 192;
  for (int m : {2, 3, 4}) {
    ContourFourier f = zero_contour(m, 6, n);
    for (auto& a : f.coeffs) a = u(rng);
    const std::vector<double> r = rhs_one(f.samples(), hemisphere);
    const double scale = max_abs(r);
    REQUIRE(scale > 1e-6);
    const int shift = n / m;
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      CHECK(std::abs(r[jj] + r[static_cast<std::size_t>((n - j) % n)]) < 1e-13);
      CHECK(std::abs(r[jj] - r[static_cast<std::size_t>((j + shift) % n)]) < 1e-13);
    }
  }
}

TEST_CASE("step_rk4 keeps zero and converges at fourth order") {
  const ZonalProfile profile = profile_of(hemisphere);
  const ContourSamples zero{std::vector<double>(64, 0.0)};
  CHECK(max_abs(step_rk4(zero, 0.1, profile)[0]) < 1e-30);
  CHECK_THROWS_AS(step_rk4(zero, 0.0, profile), DomainError);

  const ContourSamples f0{grid_samples(64, smooth_start)};
  const double t_end = 1.0;
  const auto a = run(f0, profile, t_end, 0.1);
  const auto b = run(f0, profile, t_end, 0.05);
  const auto c = run(f0, profile, t_end, 0.025);
  const double e1 = diff_norm(a[0], b[0]);
  const double e2 = diff_norm(b[0], c[0]);
  REQUIRE(e2 > 1e-14);
  CHECK(std::abs(std::log2(e1 / e2) - 4.0) < 0.3);
}

TEST_CASE("linear regime rotates at the bifurcation speed") {
  const ZonalProfile profile = profile_of(hemisphere);
  const int m = 2;
  const double eps = 1e-4;
  const double c = burbea_shifted_speed(m, 0.0, 1.0, -1.0);
  std::vector<double> f(64);
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = eps * std::cos(m * 2 * pi * j / 64);
  EvolutionOptions o;
  o.record_every = 50;
  const double period = 2 * pi / std::abs(c);
  const Trajectory tr = evolve({f}, profile, period, 0.01, o);
  REQUIRE(!tr.aborted);
  double err = 0.0;
  for (const Snapshot& s : tr.snapshots) {
    const FourierSeries fs = real_fourier(s.f[0]);
    // eps cos(m (phi - psi)) has phase m psi.
    const double psi = std::atan2(fs.b[m], fs.a[m]) / m;
    double d = std::remainder(psi - c * s.t, 2 * pi / m);
    err = std::max(err, std::abs(d));
  }
  CHECK(err < 1e-3);
}

TEST_CASE("flat cap and band stay zonal for 10 time units") {
  for (const ZonalProfile& profile : {profile_of(hemisphere), profile_of(symmetric),
                                      profile_of(FlatCapState{1.1, 0.4, -1.0, 0.7})}) {
    const ContourSamples zero(static_cast<std::size_t>(profile.interfaces()),
                              std::vector<double>(64, 0.0));
    EvolutionOptions o;
    o.record_every = 100;
    const Trajectory tr = evolve(zero, profile, 10.0, 0.01, o);
    REQUIRE(!tr.aborted);
    double worst = 0.0;
    for (const Snapshot& s : tr.snapshots) {
      for (const auto& fk : s.f) worst = std::max(worst, max_abs(fk));
    }
    CHECK(worst < 1e-9);
    CHECK(rigid_rotation_error(tr, 0.0) < 1e-9);
    CHECK(tr.snapshots.back().t == doctest::Approx(10.0).epsilon(1e-14));
  }
}

TEST_CASE("cap_area") {
  const std::vector<double> zero(64, 0.0);
  CHECK(cap_area(zero, pi / 2) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(cap_area(zero, pi / 3) == doctest::Approx(pi).epsilon(1e-14));
  // The O(eps) term vanishes, so the area change scales as eps^2.
  const double theta = 1.0;
  const double flat = 2 * pi * (1 - std::cos(theta));
  double previous = 0.0;
  for (double eps : {1e-2, 5e-3, 2.5e-3}) {
    std::vector<double> f(64);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = eps * std::cos(3 * 2 * pi * j / 64);
    const double change = cap_area(f, theta) - flat;
    // Exact second-order term: (pi / 2) eps^2 cos(theta) from averaging cos^2.
    CHECK(change == doctest::Approx(0.5 * pi * eps * eps * std::cos(theta)).epsilon(1e-3));
    if (previous != 0.0) CHECK(previous / change == doctest::Approx(4.0).epsilon(1e-3));
    previous = change;
  }
}

TEST_CASE("area and Gauss measure are conserved") {
  const BranchPoint p = hemisphere_wave(0.03, 64, 8);
  const ZonalProfile profile = profile_of(hemisphere);
  EvolutionOptions o;
  o.fold = 2;
  o.record_every = 20;
  const Trajectory tr = evolve({p.contours[0].samples()}, profile, 3.0, 5e-3, o);
  REQUIRE(!tr.aborted);
  const double a0 = tr.snapshots.front().areas[0];
  const double g0 = tr.snapshots.front().gauss;
  for (const Snapshot& s : tr.snapshots) {
    CHECK(std::abs(s.areas[0] - a0) / a0 < 1e-7);
    CHECK(std::abs(s.gauss - g0) < 1e-9);
  }

  // Band with both interfaces perturbed.
  const ZonalProfile band = profile_of(symmetric);
  ContourSamples f0(2, std::vector<double>(64));
  for (std::size_t j = 0; j < 64; ++j) {
    const double phi = 2 * pi * static_cast<double>(j) / 64;
    f0[0][j] = 0.01 * std::cos(2 * phi) + 0.004 * std::sin(3 * phi);
    f0[1][j] = -0.008 * std::cos(2 * phi + 0.3);
  }
  EvolutionOptions ob;
  ob.record_every = 20;
  const Trajectory tb = evolve(f0, band, 2.0, 5e-3, ob);
  REQUIRE(!tb.aborted);
  for (const Snapshot& s : tb.snapshots) {
    for (int k = 0; k < 2; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      CHECK(std::abs(s.areas[kk] - tb.snapshots.front().areas[kk]) < 1e-8);
    }
    CHECK(std::abs(s.gauss - tb.snapshots.front().gauss) < 1e-9);
  }
  // Zonal states satisfy the constraint exactly.
  CHECK(std::abs(gauss_measure(band, ContourSamples(2, std::vector<double>(64, 0.0)))) < 1e-12);
}

TEST_CASE("m-fold symmetry and the reflection identity are preserved") {
  const int n = 96;
  const ZonalProfile profile = profile_of(FlatCapState{1.2, 0.5, -1.0, 0.3});
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double phi = 2 * pi * j / n;
    f[static_cast<std::size_t>(j)] = 0.01 * std::cos(3 * phi) + 0.006 * std::sin(6 * phi + 0.2);
  }
  const ContourSamples end = run({f}, profile, 1.0, 0.01);
  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(end[0][static_cast<std::size_t>(j)] -
                   end[0][static_cast<std::size_t>((j + n / 3) % n)]) < 1e-10);
  }

  // For even f0, f(t, -phi) evolved for time t returns to f0.
  std::vector<double> even(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double phi = 2 * pi * j / n;
    even[static_cast<std::size_t>(j)] = 0.01 * std::cos(2 * phi) + 0.005 * std::cos(3 * phi);
  }
  const ContourSamples forward = run({even}, profile, 1.0, 0.005);
  std::vector<double> reflected(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    reflected[static_cast<std::size_t>(j)] = forward[0][static_cast<std::size_t>((n - j) % n)];
  }
  const ContourSamples back = run({reflected}, profile, 1.0, 0.005);
  CHECK(diff_norm(back[0], even) < 1e-9);
  // Evenness itself is not preserved unless the field is stationary.
  double odd_part = 0.0;
  for (int j = 0; j < n; ++j) {
    odd_part = std::max(odd_part, std::abs(forward[0][static_cast<std::size_t>(j)] -
                                           reflected[static_cast<std::size_t>(j)]));
  }
  CHECK(odd_part > 1e-4);

  // Traveling wave: f(t, -phi) = f0(phi + c t).
  const BranchPoint p = hemisphere_wave(0.02, 64, 8);
  const std::vector<double> w0 = p.contours[0].samples();
  const double t = 0.5;
  const ContourSamples wt = run({w0}, profile_of(hemisphere), t, 0.005);
  const std::vector<double> expect = shift_samples(w0, -p.c * t);
  double err = 0.0;
  for (int j = 0; j < 64; ++j) {
    err = std::max(err, std::abs(wt[0][static_cast<std::size_t>((64 - j) % 64)] -
                                 expect[static_cast<std::size_t>(j)]));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("frame change: rotation speed shift equals a rigid rotation") {
  const int n = 64;
  const ZonalProfile base = profile_of(FlatCapState{1.0, 0.6, -1.0, 0.2});
  ZonalProfile shifted = base;
  const double c = 0.37;
  shifted.gamma += c;
  ContourSamples f0{grid_samples(n, smooth_start)};
  EvolutionOptions o;
  o.record_every = 10;
  const Trajectory a = evolve(f0, base, 1.0, 0.005, o);
  const Trajectory b = evolve(f0, shifted, 1.0, 0.005, o);
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  double err = 0.0;
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    const std::vector<double> rotated = shift_samples(a.snapshots[i].f[0], c * a.snapshots[i].t);
    err = std::max(err, diff_norm(rotated, b.snapshots[i].f[0]));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("rigid rotation error of a traveling wave") {
  const BranchPoint p = hemisphere_wave(0.02, 64, 8);
  const std::vector<double> w0 = p.contours[0].samples();
  EvolutionOptions o;
  o.fold = 2;
  o.record_every = 10;
  const Trajectory tr = evolve({w0}, profile_of(hemisphere), 2.0, 5e-3, o);
  REQUIRE(!tr.aborted);
  CHECK(rigid_rotation_error(tr, p.c) < 1e-8);
  // A wrong speed drifts linearly: |dc| t max|f'|.
  const double dc = 1e-3;
  const double slope = dc * max_abs(spectral_derivative(w0));
  for (std::size_t i = 1; i < tr.snapshots.size(); ++i) {
    const double t = tr.snapshots[i].t;
    CHECK(rotation_deviation(tr, i, p.c + dc) == doctest::Approx(slope * t).epsilon(2e-2));
  }
}

TEST_CASE("evolve guards") {
  const ZonalProfile profile = profile_of(hemisphere);
  const ContourSamples zero{std::vector<double>(64, 0.0)};
  CHECK_THROWS_AS(evolve(zero, profile, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(evolve(zero, profile, -1.0, 0.1), DomainError);
  const ContourSamples big{std::vector<double>(64, 0.31)};
  CHECK_THROWS_AS(evolve(big, profile, 1.0, 0.1), PoleProximityError);
  const Trajectory still = evolve(zero, profile, 0.0, 0.1);
  CHECK(still.snapshots.size() == 1);

  // Two modes at different speeds beat; a tight bound stops the run.
  std::vector<double> f(64);
  for (std::size_t j = 0; j < 64; ++j) {
    const double phi = 2 * pi * static_cast<double>(j) / 64;
    f[j] = 1e-3 * (std::cos(2 * phi) + std::cos(3 * phi + pi / 4));
  }
  const double start = max_abs(f);
  EvolutionOptions o;
  o.bound = start + 5e-5;
  const Trajectory tr = evolve({f}, profile, 40.0, 0.02, o);
  CHECK(tr.aborted);
  CHECK(!tr.abort_reason.empty());
  CHECK(tr.snapshots.back().t < 40.0);
  for (const Snapshot& s : tr.snapshots) CHECK(max_abs(s.f[0]) <= o.bound);
}

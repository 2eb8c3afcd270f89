#include "vortexcaps/caps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/quadrature.hpp"

namespace vortexcaps {

namespace {

constexpr double constraint_tol = 1e-12;

void check_interior(double theta, const char* who) {
  if (!(theta > 0.0 && theta < pi)) {
    throw DomainError(std::string(who) + ": colatitude outside (0, pi)");
  }
}

bool close(double a, double b) {
  return std::abs(a - b) <= constraint_tol * std::max(1.0, std::abs(a));
}

}  // namespace

void FlatCapState::validate() const {
  check_interior(theta0, "FlatCapState");
  if (omega_n == omega_s) {
    throw DegenerateError("FlatCapState: omega_n equals omega_s");
  }
  if (!close(omega_n + omega_s, (omega_n - omega_s) * std::cos(theta0))) {
    throw DomainError("FlatCapState: Gauss constraint violated");
  }
}

void BandState::validate() const {
  check_interior(theta1, "BandState");
  check_interior(theta2, "BandState");
  if (!(theta1 < theta2)) {
    throw DomainError("BandState: theta1 must be below theta2");
  }
  if (omega_n == omega_c || omega_c == omega_s) {
    throw DegenerateError("BandState: adjacent vorticities coincide");
  }
  const double rhs = (omega_n - omega_c) * std::cos(theta1) +
                     (omega_c - omega_s) * std::cos(theta2);
  if (!close(omega_n + omega_s, rhs)) {
    throw DomainError("BandState: Gauss constraint violated");
  }
}

double ZonalProfile::jump(int k) const { return omegas[k] - omegas[k + 1]; }

ZonalProfile profile_of(const FlatCapState& state) {
  return {{state.theta0}, {state.omega_n, state.omega_s}, state.gamma};
}

ZonalProfile profile_of(const BandState& band) {
  return {{band.theta1, band.theta2},
          {band.omega_n, band.omega_c, band.omega_s},
          band.gamma};
}

FlatCapState solve_gauss_one(double theta0, double omega_s, double gamma) {
  check_interior(theta0, "solve_gauss_one");
  if (omega_s == 0.0) throw DomainError("solve_gauss_one: omega_s is zero");
  const double c = std::cos(theta0);
  FlatCapState state{theta0, omega_s * (c + 1.0) / (c - 1.0), omega_s, gamma};
  if (state.omega_n == state.omega_s) {
    throw DegenerateError("solve_gauss_one: omega_n equals omega_s");
  }
  return state;
}

double solve_gauss_two(double theta1, double theta2, double omega_n,
                       double omega_s) {
  check_interior(theta1, "solve_gauss_two");
  check_interior(theta2, "solve_gauss_two");
  const double den = std::cos(theta2) - std::cos(theta1);
  if (theta1 == theta2 || den == 0.0) {
    throw DegenerateError("solve_gauss_two: coincident interfaces");
  }
  const double omega_c = (omega_n * (1.0 - std::cos(theta1)) +
                          omega_s * (1.0 + std::cos(theta2))) /
                         den;
  if (omega_c == omega_n || omega_c == omega_s) {
    throw DegenerateError("solve_gauss_two: omega_c equals a neighbour");
  }
  return omega_c;
}

BandState make_band(double theta1, double theta2, double omega_n,
                    double omega_s, double gamma) {
  BandState band{theta1, theta2, omega_n,
                 solve_gauss_two(theta1, theta2, omega_n, omega_s), omega_s,
                 gamma};
  band.validate();
  return band;
}

double gauss_total(const ZonalProfile& profile) {
  // Zone k spans colatitudes [theta_{k-1}, theta_k] with area
  // 2 pi (cos theta_{k-1} - cos theta_k).
  double total = 0.0;
  double upper = 1.0;
  for (int k = 0; k <= profile.interfaces(); ++k) {
    const double lower =
        k < profile.interfaces() ? std::cos(profile.thetas[k]) : -1.0;
    total += profile.omegas[k] * two_pi * (upper - lower);
    upper = lower;
  }
  return total;
}

double flat_stream_dtheta(const ZonalProfile& profile, double theta) {
  if (!(theta > 0.0 && theta < pi)) {
    throw PoleProximityError("flat_stream_dtheta: colatitude at a pole");
  }
  // sin(theta) dPsi/dtheta is the enclosed circulation of the cap north of
  // theta, piecewise linear in cos(theta).
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const int n = profile.interfaces();
  int zone = 0;
  while (zone < n && theta >= profile.thetas[zone]) ++zone;
  double circulation;
  if (zone == n) {
    circulation = -profile.omegas[n] * (1.0 + c);
  } else {
    circulation = profile.omegas[zone] * (1.0 - c);
    for (int k = 0; k < zone; ++k) {
      circulation += profile.jump(k) * (1.0 - std::cos(profile.thetas[k]));
    }
  }
  return circulation / s - profile.gamma * s;
}

double flat_stream_dtheta_one(const FlatCapState& state, double theta) {
  return flat_stream_dtheta(profile_of(state), theta);
}

double flat_stream_dtheta_two(const BandState& band, double theta) {
  return flat_stream_dtheta(profile_of(band), theta);
}

double flat_stream_difference(const ZonalProfile& profile, double theta_ref,
                              double theta, int order) {
  const double lo = std::min(theta_ref, theta);
  const double hi = std::max(theta_ref, theta);
  std::vector<double> cuts{lo};
  for (double t : profile.thetas) {
    if (t > lo && t < hi) cuts.push_back(t);
  }
  cuts.push_back(hi);
  const auto fn = [&](double t) { return flat_stream_dtheta(profile, t); };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += gauss_legendre(fn, cuts[i], cuts[i + 1], order);
  }
  return theta >= theta_ref ? acc : -acc;
}

}  // namespace vortexcaps

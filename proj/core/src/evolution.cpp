#include "vortexcaps/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/fourier.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/quadrature.hpp"

namespace vortexcaps {

ContourSamples evolution_rhs(const ZonalProfile& profile,
                             const ContourSamples& f,
                             const EvolutionOptions& options) {
  ContourSamples v =
      contour_rhs(profile, f, {options.fold, false, options.bound});
  if (options.dealias) {
    for (auto& vk : v) {
      vk = lowpass(vk, static_cast<int>(vk.size()) / 3);
    }
  }
  return v;
}

std::vector<double> rhs_one(const std::vector<double>& f,
                            const FlatCapState& state, int fold) {
  return contour_rhs(profile_of(state), {f}, {fold, false})[0];
}

namespace {

ContourSamples axpy(const ContourSamples& x, double a,
                    const ContourSamples& y) {
  ContourSamples out = x;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t j = 0; j < out[k].size(); ++j) out[k][j] += a * y[k][j];
  }
  return out;
}

}  // namespace

ContourSamples step_rk4(const ContourSamples& f, double dt,
                        const ZonalProfile& profile,
                        const EvolutionOptions& options) {
  if (!(dt > 0.0)) throw DomainError("step_rk4: dt must be positive");
  const ContourSamples k1 = evolution_rhs(profile, f, options);
  const ContourSamples k2 =
      evolution_rhs(profile, axpy(f, 0.5 * dt, k1), options);
  const ContourSamples k3 =
      evolution_rhs(profile, axpy(f, 0.5 * dt, k2), options);
  const ContourSamples k4 = evolution_rhs(profile, axpy(f, dt, k3), options);
  ContourSamples out = f;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t j = 0; j < out[k].size(); ++j) {
      out[k][j] += dt / 6.0 *
                   (k1[k][j] + 2.0 * k2[k][j] + 2.0 * k3[k][j] + k4[k][j]);
    }
  }
  return out;
}

double cap_area(const std::vector<double>& f, double theta_interface) {
  std::vector<double> integrand(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double s = std::sin(0.5 * (theta_interface + f[j]));
    integrand[j] = 2.0 * s * s;
  }
  return periodic_trapezoid(integrand);
}

double gauss_measure(const ZonalProfile& profile, const ContourSamples& f) {
  double total = 0.0;
  double north = 0.0;
  for (int k = 0; k < profile.interfaces(); ++k) {
    const double area = cap_area(f[k], profile.thetas[k]);
    total += profile.omegas[k] * (area - north);
    north = area;
  }
  total += profile.omegas[profile.interfaces()] * (4.0 * pi - north);
  return total;
}

namespace {

Snapshot snapshot(double t, const ContourSamples& f,
                  const ZonalProfile& profile) {
  Snapshot s;
  s.t = t;
  s.f = f;
  for (int k = 0; k < profile.interfaces(); ++k) {
    s.areas.push_back(cap_area(f[k], profile.thetas[k]));
  }
  s.gauss = gauss_measure(profile, f);
  return s;
}

}  // namespace

Trajectory evolve(const ContourSamples& f0, const ZonalProfile& profile,
                  double t_end, double dt, const EvolutionOptions& options) {
  if (!(dt > 0.0)) throw DomainError("evolve: dt must be positive");
  if (!(t_end >= 0.0)) throw DomainError("evolve: t_end must be >= 0");
  check_contours(profile, f0, options.bound);
  const long steps =
      std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
  const double h = t_end / static_cast<double>(steps);
  const int every = std::max(1, options.record_every);
  Trajectory traj;
  traj.profile = profile;
  traj.snapshots.push_back(snapshot(0.0, f0, profile));
  if (t_end == 0.0) return traj;
  ContourSamples f = f0;
  for (long i = 1; i <= steps; ++i) {
    try {
      f = step_rk4(f, h, profile, options);
    } catch (const std::runtime_error& e) {
      traj.aborted = true;
      traj.abort_reason = e.what();
      break;
    }
    if (i % every == 0 || i == steps) {
      traj.snapshots.push_back(snapshot(h * static_cast<double>(i), f, profile));
    }
  }
  return traj;
}

double rotation_deviation(const Trajectory& trajectory, std::size_t index,
                          double c) {
  const Snapshot& first = trajectory.snapshots.front();
  const Snapshot& s = trajectory.snapshots.at(index);
  double err = 0.0;
  for (std::size_t k = 0; k < s.f.size(); ++k) {
    const std::vector<double> ref = shift_samples(first.f[k], c * s.t);
    for (std::size_t j = 0; j < ref.size(); ++j) {
      err = std::max(err, std::abs(s.f[k][j] - ref[j]));
    }
  }
  return err;
}

double rigid_rotation_error(const Trajectory& trajectory, double c) {
  double err = 0.0;
  for (std::size_t i = 0; i < trajectory.snapshots.size(); ++i) {
    err = std::max(err, rotation_deviation(trajectory, i, c));
  }
  return err;
}

}  // namespace vortexcaps

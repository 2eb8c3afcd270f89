#pragma once

#include <string>
#include <vector>

#include "vortexcaps/caps.hpp"
#include "vortexcaps/functional.hpp"

namespace vortexcaps {

struct EvolutionOptions {
  /// m-fold symmetry promised by the initial data; 1 for none.
  int fold = 1;
  double bound = default_perturbation_bound;
  /// Keep modes up to N/3 in the velocity samples; zero modes above.
  bool dealias = true;
  /// Snapshot every this many steps; the final state is always kept.
  int record_every = 1;
};

/// Contour velocity d f_k / dt, filtered to the retained band.
ContourSamples evolution_rhs(const ZonalProfile& profile,
                             const ContourSamples& f,
                             const EvolutionOptions& options = {});

/// Single-interface velocity; equals the c = 0 functional.
std::vector<double> rhs_one(const std::vector<double>& f,
                            const FlatCapState& state, int fold = 1);

ContourSamples step_rk4(const ContourSamples& f, double dt,
                        const ZonalProfile& profile,
                        const EvolutionOptions& options = {});

/// int_0^{2 pi} (1 - cos(theta + f(phi))) dphi.
double cap_area(const std::vector<double>& f, double theta_interface);

/// Sum over zones of vorticity times zone area for perturbed interfaces.
double gauss_measure(const ZonalProfile& profile, const ContourSamples& f);

struct Snapshot {
  double t = 0.0;
  ContourSamples f;
  std::vector<double> areas;
  double gauss = 0.0;
};

struct Trajectory {
  ZonalProfile profile;
  std::vector<Snapshot> snapshots;
  bool aborted = false;
  std::string abort_reason;
};

/// RK4 with the uniform step t_end / ceil(t_end / dt). A bound violation
/// stops the run and returns the partial trajectory flagged as aborted.
Trajectory evolve(const ContourSamples& f0, const ZonalProfile& profile,
                  double t_end, double dt,
                  const EvolutionOptions& options = {});

/// ||f(t) - f(0, . - c t)|| at one snapshot, maximised over interfaces.
double rotation_deviation(const Trajectory& trajectory, std::size_t index,
                          double c);

/// Maximum of rotation_deviation over all snapshots.
double rigid_rotation_error(const Trajectory& trajectory, double c);

}  // namespace vortexcaps

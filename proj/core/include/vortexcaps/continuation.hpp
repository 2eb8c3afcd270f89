#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortexcaps/caps.hpp"
#include "vortexcaps/contour.hpp"

namespace vortexcaps {

/// A solved point: speed c, one contour per interface, pinned amplitude.
struct BranchPoint {
  double c = 0.0;
  std::vector<ContourFourier> contours;
  double epsilon = 0.0;
  /// Sup norm of the functional over all interfaces.
  double residual_norm = 0.0;
  int iterations = 0;
  /// Residual sup norm before each Newton update and after the last one.
  std::vector<double> residual_history;
};

/// Coefficient held fixed at epsilon during Newton: coefficient index + 1
/// of the given interface.
struct PinnedCoefficient {
  int interface = 0;
  int index = 0;
};

struct Branch {
  ZonalProfile profile;
  int fold = 1;
  /// +1 or -1 for bands, 0 for a single interface.
  int kappa = 0;
  double bifurcation_speed = 0.0;
  /// Predictor direction per interface, scaled so the pinned entry is 1.
  std::vector<double> kernel;
  PinnedCoefficient pin;
  /// Ordered by strictly increasing epsilon.
  std::vector<BranchPoint> points;
};

/// Raised when marching cannot reach the next amplitude; carries the points
/// solved so far.
class ContinuationStall : public std::runtime_error {
 public:
  ContinuationStall(const std::string& what, Branch partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Branch& partial() const { return partial_; }

 private:
  Branch partial_;
};

/// Null vector (m22(c), -m21) of M_m at c = c_m^kappa. Throws
/// DegenerateError when both entries fall below 1e-14.
std::array<double, 2> kernel_vector_two(const BandState& band, int m,
                                        int kappa);

struct TransversalityPairing {
  /// -m v . u0 with u0 the kernel vector and v = (m22, -m12) the left null
  /// vector: the projection of d/dc of the linearization on the cokernel.
  double value = 0.0;
  /// m22 at the root.
  double first_factor = 0.0;
  /// m11 + m22 at the root, equal to -kappa sqrt(Delta_m).
  double second_factor = 0.0;
  /// m [m22^2 - m12 m21] at the root, a diagnostic companion.
  double bracket_form = 0.0;
};

TransversalityPairing transversality_pairing(const BandState& band, int m,
                                             int kappa);

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 25;
};

/// Solves the functional in (c, free coefficients) with the pinned
/// coefficient held at its initial value. Throws ConvergenceError after
/// max_iter updates and DegenerateError on a singular Jacobian.
BranchPoint newton_correct(const BranchPoint& initial,
                           const ZonalProfile& profile,
                           const PinnedCoefficient& pin,
                           const NewtonOptions& options = {});

struct ContinuationOptions {
  int modes = default_modes;
  /// Zero selects default_collocation.
  int n_collocation = 0;
  NewtonOptions newton;
  /// March negative amplitudes as well as positive ones.
  bool both_signs = true;
};

Branch branch_one(const FlatCapState& state, int m, double eps_max,
                  int n_steps, const ContinuationOptions& options = {});

Branch branch_two(const BandState& band, int m, int kappa, double eps_max,
                  int n_steps, const ContinuationOptions& options = {});

/// Interface whose kernel entry is larger in magnitude, coefficient 1.
PinnedCoefficient band_pin(const std::array<double, 2>& kernel);

}  // namespace vortexcaps

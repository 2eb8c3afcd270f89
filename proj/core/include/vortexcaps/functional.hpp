#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "vortexcaps/caps.hpp"
#include "vortexcaps/contour.hpp"

namespace vortexcaps {

/// Perturbation samples theta_k(phi_j) - theta_k for every interface.
using ContourSamples = std::vector<std::vector<double>>;

/// Symmetry promised by the caller, used to evaluate only a fundamental
/// set of targets. `even` means every perturbation is even in phi.
struct KernelOptions {
  int fold = 1;
  bool even = false;
  double bound = default_perturbation_bound;
};

/// Throws PoleProximityError when a contour leaves (margin, pi - margin) or
/// a perturbation exceeds the bound, InterfaceCrossingError when
/// interfaces touch.
void check_contours(const ZonalProfile& profile, const ContourSamples& f,
                    double bound);

/// d/dphi[Psi(theta_k + f_k(phi), phi)] / sin(theta_k + f_k(phi)) on every
/// interface: the contour dynamics velocity d f_k / dt.
ContourSamples contour_rhs(const ZonalProfile& profile,
                           const ContourSamples& f,
                           const KernelOptions& options = {});

/// Psi on every interface: -omega_south + sum_l jump_l Psi_{A_l} +
/// gamma cos(theta), where Psi_A is the Green potential of the cap A.
ContourSamples stream_on_contours(const ZonalProfile& profile,
                                  const ContourSamples& f,
                                  const KernelOptions& options = {});

/// Psi at a point away from every interface.
double stream_at(const ZonalProfile& profile, const ContourSamples& f,
                 double theta, double phi);

std::vector<double> stream_on_contour(const FlatCapState& state,
                                      const ContourFourier& f);

std::array<std::vector<double>, 2> stream_on_contour_two(
    const BandState& band, const ContourFourier& f1, const ContourFourier& f2);

/// c f' + contour_rhs for one interface.
ResidualField functional_one(double c, const ContourFourier& f,
                             const FlatCapState& state);

std::array<ResidualField, 2> functional_two(double c, const ContourFourier& f1,
                                            const ContourFourier& f2,
                                            const BandState& band);

/// Residual of any stack of interfaces sharing fold and grid.
std::vector<ResidualField> functional(double c,
                                      const std::vector<ContourFourier>& f,
                                      const ZonalProfile& profile);

/// Sine coefficients n = 1..M of every residual component, stacked.
Eigen::VectorXd residual_coefficients(double c,
                                      const std::vector<ContourFourier>& f,
                                      const ZonalProfile& profile);

struct Jacobian {
  /// Rows: sine coefficient n of interface k at k M + n - 1. Column 0 is
  /// d/dc; column 1 + k M + n - 1 is coefficient n of interface k.
  Eigen::MatrixXd matrix;
  double condition = 0.0;
  bool ill_conditioned = false;
};

inline constexpr double fd_relative_step = 1e-6;
inline constexpr double ill_conditioning_ratio = 1e12;

/// Central differences in the coefficients with step
/// 1e-6 max(1, |coefficient|); the c column is the exact sine projection
/// of f'.
Jacobian jacobian_fd(double c, const std::vector<ContourFourier>& f,
                     const ZonalProfile& profile);

}  // namespace vortexcaps

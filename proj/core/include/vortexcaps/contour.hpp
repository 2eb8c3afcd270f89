#pragma once

#include <vector>

namespace vortexcaps {

inline constexpr double pole_margin = 1e-8;
inline constexpr double default_perturbation_bound = 0.3;
inline constexpr int default_modes = 32;

/// Default grid size 256 m capped at 4096, raised if needed to 4 m M.
int default_collocation(int fold, int modes = default_modes);

/// Even m-fold perturbation f(phi) = sum_{n=1}^{M} coeffs[n-1] cos(m n phi)
/// sampled on a uniform grid of n_collocation points.
struct ContourFourier {
  int fold = 1;
  std::vector<double> coeffs;
  int n_collocation = 0;

  int modes() const { return static_cast<int>(coeffs.size()); }
  /// Throws DomainError when the grid is odd or coarser than 4 m M.
  void validate() const;
  std::vector<double> samples() const;
  /// Same coefficients on another grid.
  ContourFourier resampled(int n_points) const;
};

ContourFourier zero_contour(int fold, int modes, int n_collocation);

/// Residual samples on the collocation grid. For an even m-fold input the
/// field is odd and m-fold, so its content sits in sin(m n phi).
struct ResidualField {
  int fold = 1;
  std::vector<double> samples;

  double sup_norm() const;
  std::vector<double> sine_coefficients(int count) const;
  /// Largest cosine or off-fold coefficient divided by the sup norm.
  double symmetry_leakage() const;
};

}  // namespace vortexcaps

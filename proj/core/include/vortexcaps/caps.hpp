#pragma once

#include <vector>

namespace vortexcaps {

/// One-interface zonal state: vorticity omega_n north of colatitude theta0,
/// omega_s south of it, sphere rotation speed gamma.
struct FlatCapState {
  double theta0 = 0.0;
  double omega_n = 0.0;
  double omega_s = 0.0;
  double gamma = 0.0;

  /// Throws DomainError or DegenerateError when an invariant fails.
  void validate() const;
};

/// Two-interface zonal state with interfaces theta1 < theta2 and vorticities
/// omega_n, omega_c, omega_s from north to south.
struct BandState {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double omega_n = 0.0;
  double omega_c = 0.0;
  double omega_s = 0.0;
  double gamma = 0.0;

  void validate() const;
};

/// Stacked zonal description shared by the contour solvers: interface
/// colatitudes north to south and the vorticity of every zone between them.
struct ZonalProfile {
  std::vector<double> thetas;
  std::vector<double> omegas;
  double gamma = 0.0;

  int interfaces() const { return static_cast<int>(thetas.size()); }
  /// omegas[k] - omegas[k + 1].
  double jump(int k) const;
};

ZonalProfile profile_of(const FlatCapState& state);
ZonalProfile profile_of(const BandState& band);

/// omega_n = omega_s (cos theta0 + 1) / (cos theta0 - 1).
FlatCapState solve_gauss_one(double theta0, double omega_s,
                             double gamma = 0.0);

/// Central vorticity closing the Gauss constraint of a band.
double solve_gauss_two(double theta1, double theta2, double omega_n,
                       double omega_s);

/// Band with omega_c from solve_gauss_two.
BandState make_band(double theta1, double theta2, double omega_n,
                    double omega_s, double gamma = 0.0);

/// Sum over zones of vorticity times zone area.
double gauss_total(const ZonalProfile& profile);

/// d Psi / d theta of the flat cap; right-continuous at theta0.
double flat_stream_dtheta_one(const FlatCapState& state, double theta);

/// d Psi / d theta of the flat band; right-continuous at the interfaces.
double flat_stream_dtheta_two(const BandState& band, double theta);

/// Profile derivative for any stack of interfaces.
double flat_stream_dtheta(const ZonalProfile& profile, double theta);

/// Psi(theta) - Psi(theta_ref) of the zonal state by piecewise
/// Gauss-Legendre integration of flat_stream_dtheta.
double flat_stream_difference(const ZonalProfile& profile, double theta_ref,
                              double theta, int order = 12);

}  // namespace vortexcaps

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortexcaps/caps.hpp"

namespace vortexcaps {

/// gamma - (omega_n - omega_s)(m - 1) / (2 m).
double burbea_shifted_speed(int m, double gamma, double omega_n,
                            double omega_s);

/// m n [-c - (omega_n - omega_s)(m n - 1) / (2 m n) + gamma].
double one_interface_symbol(int m, int n, double c, const FlatCapState& state);

/// tan^n(theta1/2) cot^n(theta2/2) evaluated in log space.
double band_coupling_power(int n, const BandState& band);

struct BandMatrix {
  int n = 0;
  double c = 0.0;
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  double det() const { return m11 * m22 - m12 * m21; }
};

BandMatrix band_matrix(int n, double c, const BandState& band);

/// det M_n(c) = c^2 - beta c + gamma.
struct DetCoeffs {
  double beta = 0.0;
  double gamma = 0.0;
};

DetCoeffs band_det_coeffs(int n, const BandState& band);

/// omega_s / sin^2(theta2/2) + omega_n / cos^2(theta1/2)
///   - (omega_n + omega_s - 2 omega_c) / n.
double band_bracket(int n, const BandState& band);

/// beta^2 - 4 gamma in bracket form:
/// (1/4)[X_n^2 + (4/n^2)(omega_n - omega_c)(omega_c - omega_s) t^{2n}].
double band_discriminant(int n, const BandState& band);

struct SpectrumEntry {
  int n = 0;
  double c_minus = 0.0;
  double c_plus = 0.0;
  double discriminant = 0.0;
  bool valid = false;
};

/// Roots beta/2 -+ sqrt(Delta)/2; valid when Delta is positive beyond a
/// relative rounding tolerance. Invalid entries report beta/2 for both.
SpectrumEntry band_speeds(int n, const BandState& band);

/// Smallest N <= n_max such that on [N, n_max] every Delta_n is positive,
/// both speed sequences are strictly monotone and the bracket X_n keeps
/// one sign.
std::optional<int> find_threshold_n(const BandState& band, int n_max = 512);

enum class NondegeneracyKind { condition1, condition2, unclassified };

struct NondegeneracyCase {
  NondegeneracyKind kind = NondegeneracyKind::unclassified;
  /// Satisfied hypotheses among H1+..H4+, H1-..H4- under condition 2.
  std::vector<std::string> labels;
};

/// omega_s cos^2(theta1/2) + omega_n sin^2(theta2/2).
double condition_value(const BandState& band);

/// Throws DegenerateError when condition 2 holds but omega_c differs from
/// omega_n + omega_s or omega_n omega_s >= 0.
NondegeneracyCase nondegeneracy_case(const BandState& band);

std::string to_string(NondegeneracyKind kind);

inline constexpr double collision_tolerance = 1e-10;

struct Collision {
  int m = 0;
  int k = 0;
  /// True for c_m^+ = c_{km}^-, false for c_{km}^+ = c_m^-.
  bool plus_at_m = true;
  double gap = 0.0;
};

std::vector<Collision> collision_scan(const BandState& band, int m, int k_max,
                                      double tol = collision_tolerance);

bool in_fig1a(double theta1, double theta2);
bool in_fig1b(double theta1, double theta2);

enum class RegionSelector { fig1a, fig1b, either, both };

struct RegionPoint {
  double theta1 = 0.0;
  double theta2 = 0.0;
  bool fig1a = false;
  bool fig1b = false;
};

/// Cell-centred grid theta_i = (i + 1/2) pi / R, i < R, restricted to
/// theta1 < theta2. Throws DomainError when R < 16.
std::vector<RegionPoint> region_grid(int resolution);

std::vector<RegionPoint> admissible_region_scan(int resolution,
                                                RegionSelector selector);

}  // namespace vortexcaps

#include "vortexcaps/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"

namespace vortexcaps {

namespace {

constexpr double condition_tol = 1e-12;
constexpr double discriminant_rel_tol = 1e-12;

double cos2_half(double t) {
  const double c = std::cos(0.5 * t);
  return c * c;
}

double sin2_half(double t) {
  const double s = std::sin(0.5 * t);
  return s * s;
}

double coupling_product(int n, const BandState& b) {
  const double t = band_coupling_power(n, b);
  return (b.omega_n - b.omega_c) * (b.omega_c - b.omega_s) * t * t /
         (4.0 * n * n);
}

}  // namespace

double burbea_shifted_speed(int m, double gamma, double omega_n,
                            double omega_s) {
  if (m < 1) throw DomainError("burbea_shifted_speed: m must be >= 1");
  return gamma - (omega_n - omega_s) * (m - 1.0) / (2.0 * m);
}

double one_interface_symbol(int m, int n, double c,
                            const FlatCapState& state) {
  if (m < 1 || n < 1) throw DomainError("one_interface_symbol: m, n >= 1");
  const double mn = static_cast<double>(m) * n;
  return mn * (-c - (state.omega_n - state.omega_s) * (mn - 1.0) / (2.0 * mn) +
               state.gamma);
}

double band_coupling_power(int n, const BandState& band) {
  const double log_t = std::log(std::tan(0.5 * band.theta1)) -
                       std::log(std::tan(0.5 * band.theta2));
  return std::exp(n * log_t);
}

BandMatrix band_matrix(int n, double c, const BandState& b) {
  if (n < 1) throw DomainError("band_matrix: n must be >= 1");
  const double t = band_coupling_power(n, b);
  const double ratio = std::sin(b.theta2) / std::sin(b.theta1);
  BandMatrix m;
  m.n = n;
  m.c = c;
  m.m11 = -c + (b.omega_n - b.omega_c) / (2.0 * n) -
          b.omega_n / (2.0 * cos2_half(b.theta1)) + b.gamma;
  m.m12 = (b.omega_c - b.omega_s) / (2.0 * n) * ratio * t;
  m.m21 = (b.omega_n - b.omega_c) / (2.0 * n) / ratio * t;
  m.m22 = -c + (b.omega_c - b.omega_s) / (2.0 * n) +
          b.omega_s / (2.0 * sin2_half(b.theta2)) + b.gamma;
  return m;
}

DetCoeffs band_det_coeffs(int n, const BandState& b) {
  if (n < 1) throw DomainError("band_det_coeffs: n must be >= 1");
  const double a = (b.omega_n - b.omega_c) / (2.0 * n) -
                   b.omega_n / (2.0 * cos2_half(b.theta1)) + b.gamma;
  const double d = (b.omega_c - b.omega_s) / (2.0 * n) +
                   b.omega_s / (2.0 * sin2_half(b.theta2)) + b.gamma;
  DetCoeffs out;
  out.beta = (b.omega_n - b.omega_s) / (2.0 * n) -
             b.omega_n / (2.0 * cos2_half(b.theta1)) +
             b.omega_s / (2.0 * sin2_half(b.theta2)) + 2.0 * b.gamma;
  out.gamma = a * d - coupling_product(n, b);
  return out;
}

double band_bracket(int n, const BandState& b) {
  return b.omega_s / sin2_half(b.theta2) + b.omega_n / cos2_half(b.theta1) -
         (b.omega_n + b.omega_s - 2.0 * b.omega_c) / n;
}

double band_discriminant(int n, const BandState& b) {
  if (n < 1) throw DomainError("band_discriminant: n must be >= 1");
  const double x = band_bracket(n, b);
  return 0.25 * x * x + 4.0 * coupling_product(n, b);
}

SpectrumEntry band_speeds(int n, const BandState& b) {
  const DetCoeffs dc = band_det_coeffs(n, b);
  const double x = band_bracket(n, b);
  const double coupling = 4.0 * coupling_product(n, b);
  SpectrumEntry e;
  e.n = n;
  e.discriminant = 0.25 * x * x + coupling;
  const double scale = 0.25 * x * x + std::abs(coupling);
  e.valid = e.discriminant > discriminant_rel_tol * scale;
  const double root = e.valid ? 0.5 * std::sqrt(e.discriminant) : 0.0;
  e.c_minus = 0.5 * dc.beta - root;
  e.c_plus = 0.5 * dc.beta + root;
  return e;
}

std::optional<int> find_threshold_n(const BandState& band, int n_max) {
  if (n_max < 1) return std::nullopt;
  std::vector<SpectrumEntry> entries(n_max + 1);
  std::vector<int> bracket_sign(n_max + 1, 0);
  for (int n = 1; n <= n_max; ++n) {
    entries[n] = band_speeds(n, band);
    const double x = band_bracket(n, band);
    bracket_sign[n] = x > 0.0 ? 1 : (x < 0.0 ? -1 : 0);
  }
  if (!entries[n_max].valid || bracket_sign[n_max] == 0) return std::nullopt;
  const auto sign_of = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
  int plus_dir = 0;
  int minus_dir = 0;
  if (n_max >= 2) {
    plus_dir = sign_of(entries[n_max].c_plus - entries[n_max - 1].c_plus);
    minus_dir = sign_of(entries[n_max].c_minus - entries[n_max - 1].c_minus);
    if (plus_dir == 0 || minus_dir == 0) return std::nullopt;
  }
  int threshold = n_max;
  for (int n = n_max - 1; n >= 1; --n) {
    const bool ok =
        entries[n].valid && bracket_sign[n] == bracket_sign[n_max] &&
        sign_of(entries[n + 1].c_plus - entries[n].c_plus) == plus_dir &&
        sign_of(entries[n + 1].c_minus - entries[n].c_minus) == minus_dir;
    if (!ok) break;
    threshold = n;
  }
  return threshold;
}

double condition_value(const BandState& b) {
  return b.omega_s * cos2_half(b.theta1) + b.omega_n * sin2_half(b.theta2);
}

NondegeneracyCase nondegeneracy_case(const BandState& b) {
  NondegeneracyCase out;
  const double scale = std::abs(b.omega_s) + std::abs(b.omega_n);
  if (std::abs(condition_value(b)) > condition_tol * scale) {
    out.kind = NondegeneracyKind::condition1;
    return out;
  }
  const double mag = std::max({std::abs(b.omega_n), std::abs(b.omega_s),
                               std::abs(b.omega_c), 1.0});
  if (std::abs(b.omega_c - (b.omega_n + b.omega_s)) > condition_tol * mag ||
      b.omega_c == 0.0 || !(b.omega_n * b.omega_s < 0.0)) {
    throw DegenerateError(
        "nondegeneracy_case: condition 2 without omega_c = omega_n + omega_s "
        "!= 0 and omega_n omega_s < 0");
  }
  const bool c_pos = b.omega_c > 0.0;
  const bool c_neg = b.omega_c < 0.0;
  const bool n_pos = b.omega_n > 0.0;
  const bool n_neg = b.omega_n < 0.0;
  const bool s_pos = b.omega_s > 0.0;
  const bool s_neg = b.omega_s < 0.0;
  const bool a = in_fig1a(b.theta1, b.theta2);
  const bool bb = in_fig1b(b.theta1, b.theta2);
  const auto add = [&](bool cond, const char* label) {
    if (cond) out.labels.emplace_back(label);
  };
  add(c_pos && n_pos && s_neg, "H1+");
  add(c_pos && n_neg && s_pos && bb, "H2+");
  add(c_neg && n_pos && s_neg, "H3+");
  add(c_neg && n_neg && s_pos && a, "H4+");
  add(c_pos && n_neg && s_pos, "H1-");
  add(c_pos && n_pos && s_neg && a, "H2-");
  add(c_neg && n_neg && s_pos, "H3-");
  add(c_neg && n_pos && s_neg && bb, "H4-");
  out.kind = out.labels.empty() ? NondegeneracyKind::unclassified
                                : NondegeneracyKind::condition2;
  return out;
}

std::string to_string(NondegeneracyKind kind) {
  switch (kind) {
    case NondegeneracyKind::condition1:
      return "condition1";
    case NondegeneracyKind::condition2:
      return "condition2";
    case NondegeneracyKind::unclassified:
      return "unclassified";
  }
  return "unclassified";
}

std::vector<Collision> collision_scan(const BandState& band, int m, int k_max,
                                      double tol) {
  std::vector<Collision> out;
  if (m < 1 || k_max < 1) return out;
  const SpectrumEntry base = band_speeds(m, band);
  for (int k = 1; k <= k_max; ++k) {
    const SpectrumEntry other = band_speeds(k * m, band);
    const double g1 = std::abs(base.c_plus - other.c_minus);
    const double g2 = std::abs(other.c_plus - base.c_minus);
    if (g1 < tol) out.push_back({m, k, true, g1});
    if (g2 < tol) out.push_back({m, k, false, g2});
  }
  return out;
}

bool in_fig1a(double theta1, double theta2) {
  return 2.0 * sin2_half(theta2) > cos2_half(theta1);
}

bool in_fig1b(double theta1, double theta2) {
  return 2.0 * cos2_half(theta1) > sin2_half(theta2);
}

std::vector<RegionPoint> region_grid(int resolution) {
  if (resolution < 16) {
    throw DomainError("region scan: resolution must be at least 16");
  }
  std::vector<RegionPoint> out;
  for (int i = 0; i < resolution; ++i) {
    const double t1 = (i + 0.5) * pi / resolution;
    for (int j = i + 1; j < resolution; ++j) {
      const double t2 = (j + 0.5) * pi / resolution;
      out.push_back({t1, t2, in_fig1a(t1, t2), in_fig1b(t1, t2)});
    }
  }
  return out;
}

std::vector<RegionPoint> admissible_region_scan(int resolution,
                                                RegionSelector selector) {
  std::vector<RegionPoint> out;
  for (const RegionPoint& p : region_grid(resolution)) {
    bool keep = false;
    switch (selector) {
      case RegionSelector::fig1a:
        keep = p.fig1a;
        break;
      case RegionSelector::fig1b:
        keep = p.fig1b;
        break;
      case RegionSelector::either:
        keep = p.fig1a || p.fig1b;
        break;
      case RegionSelector::both:
        keep = p.fig1a && p.fig1b;
        break;
    }
    if (keep) out.push_back(p);
  }
  return out;
}

}  // namespace vortexcaps

#include "vortexcaps/functional.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <memory>
#include <string>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/fourier.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/quadrature.hpp"

namespace vortexcaps {

namespace {

// Degree of the polynomial split of log(U) / (1 - U) in the stream
// function quadrature.
constexpr int stokes_split_degree = 6;

struct ContourGeometry {
  std::vector<double> theta;
  std::vector<double> fprime;
  std::vector<double> sin_theta;
  std::vector<double> sin_half;
  std::vector<double> cos_half;
  // Point z and tangent dz/dphi.
  std::vector<double> x, y, z, tx, ty, tz;
  double area = 0.0;
};

ContourGeometry build_geometry(double base, const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  ContourGeometry g;
  g.fprime = spectral_derivative(f);
  g.theta.resize(n);
  g.sin_theta.resize(n);
  g.sin_half.resize(n);
  g.cos_half.resize(n);
  g.x.resize(n);
  g.y.resize(n);
  g.z.resize(n);
  g.tx.resize(n);
  g.ty.resize(n);
  g.tz.resize(n);
  const double h = two_pi / n;
  double area = 0.0;
  for (int j = 0; j < n; ++j) {
    const double th = base + f[j];
    const double phi = h * j;
    const double st = std::sin(th);
    const double ct = std::cos(th);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    g.theta[j] = th;
    g.sin_theta[j] = st;
    g.sin_half[j] = std::sin(0.5 * th);
    g.cos_half[j] = std::cos(0.5 * th);
    g.x[j] = st * cp;
    g.y[j] = st * sp;
    g.z[j] = ct;
    const double fp = g.fprime[j];
    g.tx[j] = fp * ct * cp - st * sp;
    g.ty[j] = fp * ct * sp + st * cp;
    g.tz[j] = -fp * st;
    area += 2.0 * g.sin_half[j] * g.sin_half[j];
  }
  g.area = h * area;
  return g;
}

struct GridTables {
  std::shared_ptr<const std::vector<double>> kress;
  // sin^2(pi d / N) and log(4 sin^2(pi d / N)) by index distance d.
  std::vector<double> sin2;
  std::vector<double> log_s4;
};

GridTables grid_tables(int n) {
  GridTables t;
  t.kress = cached_log_singular_weights(n);
  t.sin2.resize(n);
  t.log_s4.assign(n, 0.0);
  for (int d = 0; d < n; ++d) {
    const double s = std::sin(pi * d / n);
    t.sin2[d] = s * s;
    if (d != 0) t.log_s4[d] = std::log(4.0 * s * s);
  }
  return t;
}

// Fundamental targets and the map back to the full grid under the promised
// symmetry.
struct TargetSet {
  int n = 0;
  int period = 0;
  bool odd_reflect = false;
  std::vector<int> targets;
};

TargetSet target_set(int n, const KernelOptions& options) {
  TargetSet t;
  t.n = n;
  const int fold = options.fold >= 1 && n % options.fold == 0 ? options.fold
                                                               : 1;
  t.period = n / fold;
  t.odd_reflect = options.even && t.period % 2 == 0;
  const int count = t.odd_reflect ? t.period / 2 + 1 : t.period;
  t.targets.resize(count);
  for (int i = 0; i < count; ++i) t.targets[i] = i;
  return t;
}

// sign = -1 for odd fields, +1 for even fields under reflection.
std::vector<double> expand(const TargetSet& t, const std::vector<double>& base,
                           double sign) {
  std::vector<double> out(t.n);
  for (int i = 0; i < t.n; ++i) {
    const int r = i % t.period;
    if (t.odd_reflect && r > t.period / 2) {
      out[i] = sign * base[t.period - r];
    } else {
      out[i] = base[r];
    }
  }
  return out;
}

// log(U) / (1 - U) with v = 1 - U supplied separately for accuracy.
inline double log_ratio(double u, double v) {
  if (std::abs(v) < 1e-8) return -1.0 - 0.5 * v - v * v / 3.0;
  if (v > 0.5) return std::log(u) / v;
  return std::log1p(-v) / v;
}

void check_shapes(const ZonalProfile& profile, const ContourSamples& f) {
  if (static_cast<int>(f.size()) != profile.interfaces()) {
    throw DomainError("contour kernel: one sample set per interface needed");
  }
  if (f.empty()) throw DomainError("contour kernel: no interfaces");
  const std::size_t n = f.front().size();
  if (n == 0 || n % 2 != 0) {
    throw DomainError("contour kernel: grid size must be even and positive");
  }
  for (const auto& fk : f) {
    if (fk.size() != n) {
      throw DomainError("contour kernel: interfaces on different grids");
    }
  }
}

std::vector<ContourGeometry> build_all(const ZonalProfile& profile,
                                       const ContourSamples& f) {
  std::vector<ContourGeometry> geo;
  geo.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    geo.push_back(build_geometry(profile.thetas[k], f[k]));
  }
  return geo;
}

}  // namespace

void check_contours(const ZonalProfile& profile, const ContourSamples& f,
                    double bound) {
  check_shapes(profile, f);
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (double v : f[k]) {
      const double th = profile.thetas[k] + v;
      if (!(th > pole_margin && th < pi - pole_margin)) {
        throw PoleProximityError("contour " + std::to_string(k) +
                                 " reaches a pole");
      }
      if (!(std::abs(v) < bound)) {
        throw PoleProximityError("contour " + std::to_string(k) +
                                 " exceeds the perturbation bound");
      }
    }
  }
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    for (std::size_t j = 0; j < f[k].size(); ++j) {
      if (!(profile.thetas[k] + f[k][j] <
            profile.thetas[k + 1] + f[k + 1][j])) {
        throw InterfaceCrossingError("interfaces " + std::to_string(k) +
                                     " and " + std::to_string(k + 1) +
                                     " cross");
      }
    }
  }
}

ContourSamples contour_rhs(const ZonalProfile& profile,
                           const ContourSamples& f,
                           const KernelOptions& options) {
  check_contours(profile, f, options.bound);
  const int n = static_cast<int>(f.front().size());
  const int count = profile.interfaces();
  const std::vector<ContourGeometry> geo = build_all(profile, f);
  const GridTables tables = grid_tables(n);
  const std::vector<double>& kress = *tables.kress;
  const TargetSet ts = target_set(n, options);
  const double h = two_pi / n;

  ContourSamples out(count);
  for (int k = 0; k < count; ++k) {
    const ContourGeometry& gk = geo[k];
    std::vector<double> base(ts.targets.size());
    for (std::size_t t = 0; t < ts.targets.size(); ++t) {
      const int i = ts.targets[t];
      // (dz/dphi x z) at the target.
      const double bx = gk.ty[i] * gk.z[i] - gk.tz[i] * gk.y[i];
      const double by = gk.tz[i] * gk.x[i] - gk.tx[i] * gk.z[i];
      const double bz = gk.tx[i] * gk.y[i] - gk.ty[i] * gk.x[i];
      const double si = gk.sin_theta[i];
      const double shi = gk.sin_half[i];
      const double chi = gk.cos_half[i];
      double total = 0.0;
      for (int l = 0; l < count; ++l) {
        const ContourGeometry& gl = geo[l];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          const int d = i >= j ? i - j : i - j + n;
          const double w = bx * gl.tx[j] + by * gl.ty[j] + bz * gl.tz[j];
          const double sh = shi * gl.cos_half[j] - chi * gl.sin_half[j];
          const double u = sh * sh + si * gl.sin_theta[j] * tables.sin2[d];
          if (l == k) {
            if (d == 0) continue;
            acc += w * (kress[d] + h * (std::log(u) - tables.log_s4[d]));
          } else {
            acc += h * w * std::log(u);
          }
        }
        total += profile.jump(l) * acc;
      }
      const double dpsi =
          total / (4.0 * pi) - profile.gamma * si * gk.fprime[i];
      base[t] = dpsi / si;
    }
    out[k] = expand(ts, base, -1.0);
  }
  return out;
}

ContourSamples stream_on_contours(const ZonalProfile& profile,
                                  const ContourSamples& f,
                                  const KernelOptions& options) {
  check_contours(profile, f, options.bound);
  const int n = static_cast<int>(f.front().size());
  const int count = profile.interfaces();
  const std::vector<ContourGeometry> geo = build_all(profile, f);
  const GridTables tables = grid_tables(n);
  const std::vector<double>& kress = *tables.kress;
  const TargetSet ts = target_set(n, options);
  const double h = two_pi / n;

  // z x dz/dphi per source node.
  std::vector<std::array<std::vector<double>, 3>> normal(count);
  for (int l = 0; l < count; ++l) {
    const ContourGeometry& g = geo[l];
    for (auto& c : normal[l]) c.resize(n);
    for (int j = 0; j < n; ++j) {
      normal[l][0][j] = g.y[j] * g.tz[j] - g.z[j] * g.ty[j];
      normal[l][1][j] = g.z[j] * g.tx[j] - g.x[j] * g.tz[j];
      normal[l][2][j] = g.x[j] * g.ty[j] - g.y[j] * g.tx[j];
    }
  }

  ContourSamples out(count);
  for (int k = 0; k < count; ++k) {
    const ContourGeometry& gk = geo[k];
    std::vector<double> base(ts.targets.size());
    for (std::size_t t = 0; t < ts.targets.size(); ++t) {
      const int i = ts.targets[t];
      const double si = gk.sin_theta[i];
      const double shi = gk.sin_half[i];
      const double chi = gk.cos_half[i];
      double psi = -profile.omegas[count] + profile.gamma * gk.z[i];
      for (int l = 0; l < count; ++l) {
        const ContourGeometry& gl = geo[l];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          const int d = i >= j ? i - j : i - j + n;
          if (l == k && d == 0) continue;
          const double w = gk.x[i] * normal[l][0][j] +
                           gk.y[i] * normal[l][1][j] +
                           gk.z[i] * normal[l][2][j];
          const double sh = shi * gl.cos_half[j] - chi * gl.sin_half[j];
          const double ch = chi * gl.cos_half[j] + shi * gl.sin_half[j];
          const double cross = si * gl.sin_theta[j] * tables.sin2[d];
          const double u = sh * sh + cross;
          const double v = ch * ch - cross;
          if (l == k) {
            // log(U)/(1-U) = log(U) q(U) + U^{K+1} log(U)/(1-U) with
            // q = 1 + U + ... + U^K; the first part carries the singularity.
            double q = 1.0;
            double up = u;
            for (int p = 1; p <= stokes_split_degree; ++p) {
              q += up;
              up *= u;
            }
            acc += w * q * (kress[d] + h * (std::log(u) - tables.log_s4[d]));
            acc += h * w * up * log_ratio(u, v);
          } else {
            acc += h * w * log_ratio(u, v);
          }
        }
        psi += profile.jump(l) *
               (acc / (8.0 * pi) - gl.area / (4.0 * pi));
      }
      base[t] = psi;
    }
    out[k] = expand(ts, base, 1.0);
  }
  return out;
}

double stream_at(const ZonalProfile& profile, const ContourSamples& f,
                 double theta, double phi) {
  check_contours(profile, f, pi);
  const int n = static_cast<int>(f.front().size());
  const std::vector<ContourGeometry> geo = build_all(profile, f);
  const double h = two_pi / n;
  const Point3 x = chart_c1({theta, phi});
  const double st = std::sin(theta);
  const double sh0 = std::sin(0.5 * theta);
  const double ch0 = std::cos(0.5 * theta);
  double psi = -profile.omegas[profile.interfaces()] + profile.gamma * x.z;
  for (int l = 0; l < profile.interfaces(); ++l) {
    const ContourGeometry& g = geo[l];
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double nx = g.y[j] * g.tz[j] - g.z[j] * g.ty[j];
      const double ny = g.z[j] * g.tx[j] - g.x[j] * g.tz[j];
      const double nz = g.x[j] * g.ty[j] - g.y[j] * g.tx[j];
      const double w = x.x * nx + x.y * ny + x.z * nz;
      const double sh = sh0 * g.cos_half[j] - ch0 * g.sin_half[j];
      const double ch = ch0 * g.cos_half[j] + sh0 * g.sin_half[j];
      const double sp = std::sin(0.5 * (phi - h * j));
      const double cross = st * g.sin_theta[j] * sp * sp;
      const double u = sh * sh + cross;
      if (u <= 0.0) throw SingularityError("stream_at: point on a contour");
      acc += h * w * log_ratio(u, ch * ch - cross);
    }
    psi += profile.jump(l) * (acc / (8.0 * pi) - g.area / (4.0 * pi));
  }
  return psi;
}

namespace {

void check_family(const std::vector<ContourFourier>& f,
                  const ZonalProfile& profile) {
  if (static_cast<int>(f.size()) != profile.interfaces()) {
    throw DomainError("functional: one contour per interface needed");
  }
  for (const auto& fk : f) {
    fk.validate();
    if (fk.fold != f.front().fold ||
        fk.n_collocation != f.front().n_collocation ||
        fk.modes() != f.front().modes()) {
      throw DomainError("functional: contours must share fold and grid");
    }
  }
}

ContourSamples sample_all(const std::vector<ContourFourier>& f) {
  ContourSamples s;
  s.reserve(f.size());
  for (const auto& fk : f) s.push_back(fk.samples());
  return s;
}

}  // namespace

std::vector<double> stream_on_contour(const FlatCapState& state,
                                      const ContourFourier& f) {
  const std::vector<ContourFourier> fs{f};
  const ZonalProfile profile = profile_of(state);
  check_family(fs, profile);
  return stream_on_contours(profile, sample_all(fs), {f.fold, true})[0];
}

std::array<std::vector<double>, 2> stream_on_contour_two(
    const BandState& band, const ContourFourier& f1,
    const ContourFourier& f2) {
  const std::vector<ContourFourier> fs{f1, f2};
  const ZonalProfile profile = profile_of(band);
  check_family(fs, profile);
  ContourSamples s = stream_on_contours(profile, sample_all(fs),
                                        {f1.fold, true});
  return {std::move(s[0]), std::move(s[1])};
}

std::vector<ResidualField> functional(double c,
                                      const std::vector<ContourFourier>& f,
                                      const ZonalProfile& profile) {
  check_family(f, profile);
  const ContourSamples samples = sample_all(f);
  const int fold = f.front().fold;
  const ContourSamples rhs = contour_rhs(profile, samples, {fold, true});
  std::vector<ResidualField> out;
  out.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::vector<double> fp = spectral_derivative(samples[k]);
    ResidualField r{fold, rhs[k]};
    for (std::size_t j = 0; j < fp.size(); ++j) r.samples[j] += c * fp[j];
    out.push_back(std::move(r));
  }
  return out;
}

ResidualField functional_one(double c, const ContourFourier& f,
                             const FlatCapState& state) {
  return functional(c, {f}, profile_of(state))[0];
}

std::array<ResidualField, 2> functional_two(double c, const ContourFourier& f1,
                                            const ContourFourier& f2,
                                            const BandState& band) {
  std::vector<ResidualField> r = functional(c, {f1, f2}, profile_of(band));
  return {std::move(r[0]), std::move(r[1])};
}

Eigen::VectorXd residual_coefficients(double c,
                                      const std::vector<ContourFourier>& f,
                                      const ZonalProfile& profile) {
  const std::vector<ResidualField> r = functional(c, f, profile);
  const int modes = f.front().modes();
  Eigen::VectorXd out(modes * static_cast<int>(f.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    const std::vector<double> s = r[k].sine_coefficients(modes);
    for (int n = 0; n < modes; ++n) out[static_cast<int>(k) * modes + n] = s[n];
  }
  return out;
}

Jacobian jacobian_fd(double c, const std::vector<ContourFourier>& f,
                     const ZonalProfile& profile) {
  check_family(f, profile);
  const int modes = f.front().modes();
  const int fold = f.front().fold;
  const int count = static_cast<int>(f.size());
  const int size = modes * count;
  Jacobian jac;
  jac.matrix = Eigen::MatrixXd::Zero(size, size + 1);
  // d/dc of c f' is f', whose sine coefficients are -m n a_n.
  for (int k = 0; k < count; ++k) {
    for (int n = 1; n <= modes; ++n) {
      jac.matrix(k * modes + n - 1, 0) =
          -static_cast<double>(fold * n) * f[k].coeffs[n - 1];
    }
  }
  std::vector<ContourFourier> work = f;
  for (int k = 0; k < count; ++k) {
    for (int n = 0; n < modes; ++n) {
      const double a = f[k].coeffs[n];
      const double step = fd_relative_step * std::max(1.0, std::abs(a));
      work[k].coeffs[n] = a + step;
      const Eigen::VectorXd plus = residual_coefficients(c, work, profile);
      work[k].coeffs[n] = a - step;
      const Eigen::VectorXd minus = residual_coefficients(c, work, profile);
      work[k].coeffs[n] = a;
      jac.matrix.col(1 + k * modes + n) = (plus - minus) / (2.0 * step);
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac.matrix.rightCols(size));
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  jac.condition = smin > 0.0 ? smax / smin
                             : std::numeric_limits<double>::infinity();
  jac.ill_conditioned = jac.condition > ill_conditioning_ratio;
  return jac;
}

}  // namespace vortexcaps

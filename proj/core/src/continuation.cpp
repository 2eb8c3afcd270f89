#include "vortexcaps/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/functional.hpp"
#include "vortexcaps/spectral.hpp"

namespace vortexcaps {

namespace {

std::string scientific(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

constexpr double kernel_floor = 1e-14;
constexpr int max_step_halvings = 4;

double root_speed(const BandState& band, int m, int kappa) {
  if (kappa != 1 && kappa != -1) {
    throw DomainError("kappa must be +1 or -1");
  }
  const SpectrumEntry e = band_speeds(m, band);
  if (!e.valid) {
    throw DegenerateError("no simple real root: discriminant not positive");
  }
  return kappa > 0 ? e.c_plus : e.c_minus;
}

double sup_norm(const std::vector<ResidualField>& fields) {
  double r = 0.0;
  for (const auto& f : fields) r = std::max(r, f.sup_norm());
  return r;
}

}  // namespace

std::array<double, 2> kernel_vector_two(const BandState& band, int m,
                                        int kappa) {
  const BandMatrix mm = band_matrix(m, root_speed(band, m, kappa), band);
  const std::array<double, 2> u{mm.m22, -mm.m21};
  if (std::abs(u[0]) < kernel_floor && std::abs(u[1]) < kernel_floor) {
    throw DegenerateError("kernel_vector_two: vanishing kernel vector");
  }
  return u;
}

TransversalityPairing transversality_pairing(const BandState& band, int m,
                                             int kappa) {
  const BandMatrix mm = band_matrix(m, root_speed(band, m, kappa), band);
  TransversalityPairing p;
  // d/dc M = -I, so <v, (d/dc) m M u0> = -m v . u0.
  p.value = -m * (mm.m22 * mm.m22 + mm.m12 * mm.m21);
  p.first_factor = mm.m22;
  p.second_factor = mm.m11 + mm.m22;
  p.bracket_form = m * (mm.m22 * mm.m22 - mm.m12 * mm.m21);
  return p;
}

PinnedCoefficient band_pin(const std::array<double, 2>& kernel) {
  return {std::abs(kernel[1]) > std::abs(kernel[0]) ? 1 : 0, 0};
}

BranchPoint newton_correct(const BranchPoint& initial,
                           const ZonalProfile& profile,
                           const PinnedCoefficient& pin,
                           const NewtonOptions& options) {
  BranchPoint point = initial;
  point.residual_history.clear();
  point.iterations = 0;
  if (pin.interface < 0 ||
      pin.interface >= static_cast<int>(point.contours.size()) ||
      pin.index < 0 || pin.index >= point.contours.front().modes()) {
    throw DomainError("newton_correct: pinned coefficient out of range");
  }
  const int modes = point.contours.front().modes();
  const int count = static_cast<int>(point.contours.size());
  const int size = modes * count;
  const int pinned_col = 1 + pin.interface * modes + pin.index;
  point.epsilon = point.contours[pin.interface].coeffs[pin.index];

  double res = sup_norm(functional(point.c, point.contours, profile));
  point.residual_history.push_back(res);
  while (res >= options.tol) {
    if (point.iterations >= options.max_iter) {
      throw ConvergenceError("newton_correct: no convergence after " +
                             std::to_string(options.max_iter) +
                             " iterations, residual " + scientific(res));
    }
    const Eigen::VectorXd r =
        residual_coefficients(point.c, point.contours, profile);
    const Jacobian jac = jacobian_fd(point.c, point.contours, profile);
    Eigen::MatrixXd reduced(size, size);
    reduced.leftCols(pinned_col) = jac.matrix.leftCols(pinned_col);
    reduced.rightCols(size - pinned_col) =
        jac.matrix.rightCols(size - pinned_col);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(reduced);
    if (!(lu.rcond() > 1e-15)) {
      throw DegenerateError("newton_correct: singular Jacobian");
    }
    const Eigen::VectorXd delta = lu.solve(-r);
    point.c += delta[0];
    for (int col = 1; col <= size; ++col) {
      if (col == pinned_col) continue;
      const int unknown = col < pinned_col ? col : col - 1;
      const int k = (col - 1) / modes;
      const int n = (col - 1) % modes;
      point.contours[k].coeffs[n] += delta[unknown];
    }
    ++point.iterations;
    res = sup_norm(functional(point.c, point.contours, profile));
    point.residual_history.push_back(res);
  }
  point.residual_norm = res;
  return point;
}

namespace {

BranchPoint predict(const Branch& skeleton, const BranchPoint& last,
                    const std::optional<BranchPoint>& before, double eps) {
  BranchPoint p = last;
  p.epsilon = eps;
  if (before) {
    const double t =
        (eps - last.epsilon) / (last.epsilon - before->epsilon);
    p.c = last.c + t * (last.c - before->c);
    for (std::size_t k = 0; k < p.contours.size(); ++k) {
      for (std::size_t n = 0; n < p.contours[k].coeffs.size(); ++n) {
        p.contours[k].coeffs[n] +=
            t * (last.contours[k].coeffs[n] - before->contours[k].coeffs[n]);
      }
    }
  } else {
    const double de = eps - last.epsilon;
    for (std::size_t k = 0; k < p.contours.size(); ++k) {
      p.contours[k].coeffs[0] += de * skeleton.kernel[k];
    }
  }
  p.contours[skeleton.pin.interface].coeffs[skeleton.pin.index] = eps;
  return p;
}

// Reaches `target` from `last`, bisecting the step on failure.
BranchPoint advance(const Branch& skeleton, const BranchPoint& last,
                    const std::optional<BranchPoint>& before, double target,
                    const NewtonOptions& newton, int depth) {
  try {
    return newton_correct(predict(skeleton, last, before, target),
                          skeleton.profile, skeleton.pin, newton);
  } catch (const std::runtime_error&) {
    if (depth >= max_step_halvings) throw;
  }
  const double mid = 0.5 * (last.epsilon + target);
  const BranchPoint half =
      advance(skeleton, last, before, mid, newton, depth + 1);
  return advance(skeleton, half, last, target, newton, depth + 1);
}

Branch march(Branch skeleton, const BranchPoint& origin, double eps_max,
             int n_steps, const ContinuationOptions& options) {
  if (!(eps_max > 0.0) || n_steps < 1) {
    throw DomainError("branch: eps_max must be positive and n_steps >= 1");
  }
  std::vector<int> signs;
  if (options.both_signs) signs.push_back(-1);
  signs.push_back(1);
  std::vector<BranchPoint> solved;
  const auto finish = [&]() {
    Branch b = skeleton;
    b.points = solved;
    std::sort(b.points.begin(), b.points.end(),
              [](const BranchPoint& a, const BranchPoint& c) {
                return a.epsilon < c.epsilon;
              });
    return b;
  };
  for (int sign : signs) {
    BranchPoint last = origin;
    std::optional<BranchPoint> before;
    for (int k = 1; k <= n_steps; ++k) {
      const double target = sign * eps_max * k / n_steps;
      try {
        BranchPoint next =
            advance(skeleton, last, before, target, options.newton, 0);
        before = last;
        last = next;
        solved.push_back(std::move(next));
      } catch (const std::runtime_error& e) {
        throw ContinuationStall(
            "continuation stalled at epsilon " + std::to_string(target) +
                ": " + e.what(),
            finish());
      }
    }
  }
  return finish();
}

}  // namespace

Branch branch_one(const FlatCapState& state, int m, double eps_max,
                  int n_steps, const ContinuationOptions& options) {
  state.validate();
  if (m < 1) throw DomainError("branch_one: m must be >= 1");
  const int n = options.n_collocation > 0
                    ? options.n_collocation
                    : default_collocation(m, options.modes);
  Branch skeleton;
  skeleton.profile = profile_of(state);
  skeleton.fold = m;
  skeleton.kappa = 0;
  skeleton.bifurcation_speed =
      burbea_shifted_speed(m, state.gamma, state.omega_n, state.omega_s);
  skeleton.kernel = {1.0};
  skeleton.pin = {0, 0};
  BranchPoint origin;
  origin.c = skeleton.bifurcation_speed;
  origin.contours = {zero_contour(m, options.modes, n)};
  return march(skeleton, origin, eps_max, n_steps, options);
}

Branch branch_two(const BandState& band, int m, int kappa, double eps_max,
                  int n_steps, const ContinuationOptions& options) {
  band.validate();
  if (m < 1) throw DomainError("branch_two: m must be >= 1");
  const std::optional<int> threshold = find_threshold_n(band);
  if (!threshold || m < *threshold) {
    throw DegenerateError("branch_two: m below the spectral threshold");
  }
  if (nondegeneracy_case(band).kind == NondegeneracyKind::unclassified) {
    throw DegenerateError("branch_two: no non-degeneracy hypothesis holds");
  }
  if (!collision_scan(band, m, 64).empty()) {
    throw DegenerateError("branch_two: spectral collision at fold m");
  }
  const int n = options.n_collocation > 0
                    ? options.n_collocation
                    : default_collocation(m, options.modes);
  const std::array<double, 2> u0 = kernel_vector_two(band, m, kappa);
  Branch skeleton;
  skeleton.profile = profile_of(band);
  skeleton.fold = m;
  skeleton.kappa = kappa;
  skeleton.bifurcation_speed = root_speed(band, m, kappa);
  skeleton.pin = band_pin(u0);
  const double scale = u0[skeleton.pin.interface];
  skeleton.kernel = {u0[0] / scale, u0[1] / scale};
  BranchPoint origin;
  origin.c = skeleton.bifurcation_speed;
  origin.contours = {zero_contour(m, options.modes, n),
                     zero_contour(m, options.modes, n)};
  return march(skeleton, origin, eps_max, n_steps, options);
}

}  // namespace vortexcaps

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace vortexcaps {

/// Uniform grid phi_j = 2 pi j / n on [0, 2 pi) with weights 2 pi / n.
class PeriodicGrid {
 public:
  /// Throws DomainError unless n_points is even and positive.
  explicit PeriodicGrid(int n_points);

  int size() const { return n_; }
  double node(int j) const;
  double weight() const;
  std::vector<double> nodes() const;

 private:
  int n_;
};

/// (2 pi / N) times the sum of the samples. Throws DomainError when empty.
double periodic_trapezoid(std::span<const double> samples);

/// I_n(a, b) = -(1/n) tan^n(min/2) cot^n(max/2).
double in_closed(int n, double a, double b);

/// (1/2 pi) int_0^{2 pi} cos(n x) log(1 - cos a cos b - sin a sin b cos x) dx
/// by a midpoint trapezoid rule on n_points nodes after a polynomially
/// graded periodic substitution that clusters nodes at the log singularity
/// x = 0. Throws DomainError when n_points < 8 n.
double in_oracle(int n, double a, double b, int n_points);

/// Circulant weights R_j such that sum_j R_{(i-j) mod N} g(phi_j)
/// integrates log(4 sin^2((phi_i - phi)/2)) g(phi) exactly for g of degree
/// below N/2.
std::vector<double> log_singular_weights(int n_points);

/// Shared read-only copy of log_singular_weights, cached per grid size.
std::shared_ptr<const std::vector<double>> cached_log_singular_weights(
    int n_points);

/// Fourier action of the kernel log(4 sin^2(x/2)) on cosine coefficients:
/// a_0 -> 0 and a_k -> -(2 pi / k) a_k.
std::vector<double> log_singular_coefficients(std::span<const double> coeffs);

/// Convolution of sum_k coeffs[k] cos(k phi) with log(4 sin^2(x/2)),
/// sampled on the grid.
std::vector<double> log_singular_multiplier(std::span<const double> coeffs,
                                            const PeriodicGrid& grid);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights on [-1, 1]. Throws DomainError when order < 2.
GaussLegendreRule gauss_legendre_rule(int order);

double gauss_legendre(const std::function<double(double)>& fn, double lo,
                      double hi, int order = 12);

}  // namespace vortexcaps

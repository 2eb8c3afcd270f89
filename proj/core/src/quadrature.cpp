#include "vortexcaps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"

namespace vortexcaps {

PeriodicGrid::PeriodicGrid(int n_points) : n_(n_points) {
  if (n_points <= 0 || n_points % 2 != 0) {
    throw DomainError("PeriodicGrid: size must be even and positive, got " +
                      std::to_string(n_points));
  }
}

double PeriodicGrid::node(int j) const { return two_pi * j / n_; }

double PeriodicGrid::weight() const { return two_pi / n_; }

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

double periodic_trapezoid(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("periodic_trapezoid: no samples");
  const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
  return two_pi * sum / static_cast<double>(samples.size());
}

namespace {

void check_colatitude(double a, const char* who) {
  if (!(a > 0.0 && a < pi)) {
    throw DomainError(std::string(who) + ": angle outside (0, pi)");
  }
}

}  // namespace

double in_closed(int n, double a, double b) {
  if (n < 1) throw DomainError("in_closed: n must be positive");
  check_colatitude(a, "in_closed");
  check_colatitude(b, "in_closed");
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double log_ratio = std::log(std::tan(0.5 * lo)) -
                           std::log(std::tan(0.5 * hi));
  return -std::exp(n * log_ratio) / n;
}

double in_oracle(int n, double a, double b, int n_points) {
  if (n < 1) throw DomainError("in_oracle: n must be positive");
  if (n_points < 8 * n) {
    throw DomainError("in_oracle: resolution below 8 n points");
  }
  check_colatitude(a, "in_oracle");
  check_colatitude(b, "in_oracle");
  // Periodic grading x = w(s) with w^(k) vanishing at s = 0 for k < p.
  constexpr int p = 8;
  const auto v = [](double s) {
    const double r = (pi - s) / pi;
    return (1.0 / p - 0.5) * r * r * r - (1.0 / p) * r + 0.5;
  };
  const auto dv = [](double s) {
    const double r = (pi - s) / pi;
    return (-3.0 * (1.0 / p - 0.5) * r * r + 1.0 / p) / pi;
  };
  const double half_gap = std::sin(0.5 * (a - b));
  const double sab = std::sin(a) * std::sin(b);
  double sum = 0.0;
  for (int j = 0; j < n_points; ++j) {
    const double s = (j + 0.5) * two_pi / n_points;
    const double v1 = v(s);
    const double v2 = v(two_pi - s);
    const double p1 = std::pow(v1, p);
    const double p2 = std::pow(v2, p);
    const double den = p1 + p2;
    const double x = two_pi * p1 / den;
    const double dx = two_pi * p *
                      (std::pow(v1, p - 1) * dv(s) * p2 +
                       p1 * std::pow(v2, p - 1) * dv(two_pi - s)) /
                      (den * den);
    const double sx = std::sin(0.5 * x);
    const double d = 2.0 * (half_gap * half_gap + sab * sx * sx);
    sum += std::cos(n * x) * std::log(d) * dx;
  }
  return sum / n_points;
}

std::vector<double> log_singular_weights(int n_points) {
  const PeriodicGrid grid(n_points);
  const int half = n_points / 2;
  std::vector<double> r(n_points);
  for (int j = 0; j < n_points; ++j) {
    const double t = grid.node(j);
    double acc = 0.0;
    for (int m = 1; m < half; ++m) acc += std::cos(m * t) / m;
    r[j] = -(two_pi / half) * acc -
           (pi / (static_cast<double>(half) * half)) * std::cos(half * t);
  }
  return r;
}

std::shared_ptr<const std::vector<double>> cached_log_singular_weights(
    int n_points) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const std::vector<double>>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n_points);
  if (it == cache.end()) {
    it = cache
             .emplace(n_points, std::make_shared<const std::vector<double>>(
                                    log_singular_weights(n_points)))
             .first;
  }
  return it->second;
}

std::vector<double> log_singular_coefficients(
    std::span<const double> coeffs) {
  std::vector<double> out(coeffs.size(), 0.0);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    out[k] = -(two_pi / static_cast<double>(k)) * coeffs[k];
  }
  return out;
}

std::vector<double> log_singular_multiplier(std::span<const double> coeffs,
                                            const PeriodicGrid& grid) {
  const std::vector<double> mapped = log_singular_coefficients(coeffs);
  std::vector<double> out(grid.size(), 0.0);
  for (int j = 0; j < grid.size(); ++j) {
    const double phi = grid.node(j);
    double acc = 0.0;
    for (std::size_t k = 1; k < mapped.size(); ++k) {
      acc += mapped[k] * std::cos(static_cast<double>(k) * phi);
    }
    out[j] = acc;
  }
  return out;
}

GaussLegendreRule gauss_legendre_rule(int order) {
  if (order < 2) throw DomainError("gauss_legendre: order must be >= 2");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

double gauss_legendre(const std::function<double(double)>& fn, double lo,
                      double hi, int order) {
  const GaussLegendreRule rule = gauss_legendre_rule(order);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < order; ++i) {
    acc += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  }
  return half * acc;
}

}  // namespace vortexcaps

#include "vortexcaps/contour.hpp"

#include <algorithm>
#include <cmath>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/fourier.hpp"

namespace vortexcaps {

int default_collocation(int fold, int modes) {
  int n = std::min(256 * fold, 4096);
  const int floor = 4 * fold * modes;
  if (n < floor) n = floor;
  const int step = 2 * fold;
  return ((n + step - 1) / step) * step;
}

void ContourFourier::validate() const {
  if (fold < 1) throw DomainError("ContourFourier: fold must be >= 1");
  if (n_collocation <= 0 || n_collocation % 2 != 0) {
    throw DomainError("ContourFourier: grid size must be even and positive");
  }
  if (n_collocation < 4 * fold * modes()) {
    throw DomainError("ContourFourier: grid coarser than 4 m M points");
  }
}

std::vector<double> ContourFourier::samples() const {
  validate();
  return synthesize_fold_cosine(coeffs, fold, n_collocation);
}

ContourFourier ContourFourier::resampled(int n_points) const {
  ContourFourier out = *this;
  out.n_collocation = n_points;
  out.validate();
  return out;
}

ContourFourier zero_contour(int fold, int modes, int n_collocation) {
  ContourFourier f{fold, std::vector<double>(modes, 0.0), n_collocation};
  f.validate();
  return f;
}

double ResidualField::sup_norm() const { return max_abs(samples); }

std::vector<double> ResidualField::sine_coefficients(int count) const {
  return fold_sine_coefficients(samples, fold, count);
}

double ResidualField::symmetry_leakage() const {
  const double scale = sup_norm();
  if (scale == 0.0) return 0.0;
  const FourierSeries s = real_fourier(samples);
  double leak = 0.0;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    leak = std::max(leak, std::abs(s.a[k]));
    if (k % static_cast<std::size_t>(fold) != 0) {
      leak = std::max(leak, std::abs(s.b[k]));
    }
  }
  return leak / scale;
}

}  // namespace vortexcaps

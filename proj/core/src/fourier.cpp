#include "vortexcaps/fourier.hpp"

#include <cmath>
#include <complex>
#include <unsupported/Eigen/FFT>

#include "vortexcaps/errors.hpp"
#include "vortexcaps/geometry.hpp"

namespace vortexcaps {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine;
  return engine;
}

void check_even(std::size_t n) {
  if (n == 0 || n % 2 != 0) {
    throw DomainError("fourier: sample count must be even and positive");
  }
}

}  // namespace

FourierSeries real_fourier(std::span<const double> samples) {
  const std::size_t n = samples.size();
  check_even(n);
  const std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> bins;
  fft_engine().fwd(bins, in);
  const std::size_t half = n / 2;
  const double inv_n = 1.0 / static_cast<double>(n);
  FourierSeries out;
  out.a.assign(half + 1, 0.0);
  out.b.assign(half + 1, 0.0);
  out.a[0] = bins[0].real() * inv_n;
  for (std::size_t k = 1; k < half; ++k) {
    out.a[k] = 2.0 * bins[k].real() * inv_n;
    out.b[k] = -2.0 * bins[k].imag() * inv_n;
  }
  out.a[half] = bins[half].real() * inv_n;
  return out;
}

std::vector<double> synthesize(const FourierSeries& series, int n_points) {
  check_even(static_cast<std::size_t>(n_points));
  const std::size_t n = static_cast<std::size_t>(n_points);
  const std::size_t half = n / 2;
  std::vector<std::complex<double>> bins(n, {0.0, 0.0});
  const double scale = static_cast<double>(n);
  const std::size_t kmax = std::min(half, series.a.size() - 1);
  bins[0] = {series.a[0] * scale, 0.0};
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double bk = k < series.b.size() ? series.b[k] : 0.0;
    if (k == half) {
      bins[k] = {series.a[k] * scale, 0.0};
      continue;
    }
    bins[k] = {0.5 * series.a[k] * scale, -0.5 * bk * scale};
    bins[n - k] = std::conj(bins[k]);
  }
  std::vector<double> out;
  fft_engine().inv(out, bins);
  out.resize(n);
  return out;
}

std::vector<double> spectral_derivative(std::span<const double> samples) {
  const FourierSeries s = real_fourier(samples);
  FourierSeries d;
  const std::size_t half = s.a.size() - 1;
  d.a.assign(half + 1, 0.0);
  d.b.assign(half + 1, 0.0);
  for (std::size_t k = 1; k < half; ++k) {
    const double kk = static_cast<double>(k);
    d.a[k] = kk * s.b[k];
    d.b[k] = -kk * s.a[k];
  }
  return synthesize(d, static_cast<int>(samples.size()));
}

std::vector<double> shift_samples(std::span<const double> samples,
                                  double shift) {
  const FourierSeries s = real_fourier(samples);
  FourierSeries r = s;
  const std::size_t half = s.a.size() - 1;
  for (std::size_t k = 1; k <= half; ++k) {
    const double c = std::cos(static_cast<double>(k) * shift);
    const double sn = std::sin(static_cast<double>(k) * shift);
    r.a[k] = s.a[k] * c - s.b[k] * sn;
    r.b[k] = k == half ? 0.0 : s.a[k] * sn + s.b[k] * c;
  }
  return synthesize(r, static_cast<int>(samples.size()));
}

std::vector<double> lowpass(std::span<const double> samples, int k_max) {
  FourierSeries s = real_fourier(samples);
  for (std::size_t k = static_cast<std::size_t>(std::max(k_max + 1, 1));
       k < s.a.size(); ++k) {
    s.a[k] = 0.0;
    s.b[k] = 0.0;
  }
  return synthesize(s, static_cast<int>(samples.size()));
}

std::vector<double> synthesize_fold_cosine(std::span<const double> coeffs,
                                           int fold, int n_points) {
  check_even(static_cast<std::size_t>(n_points));
  FourierSeries s;
  const std::size_t half = static_cast<std::size_t>(n_points) / 2;
  s.a.assign(half + 1, 0.0);
  s.b.assign(half + 1, 0.0);
  for (std::size_t n = 1; n <= coeffs.size(); ++n) {
    const std::size_t k = n * static_cast<std::size_t>(fold);
    if (k >= half) {
      if (coeffs[n - 1] != 0.0) {
        throw DomainError("synthesize_fold_cosine: grid too coarse");
      }
      continue;
    }
    s.a[k] = coeffs[n - 1];
  }
  return synthesize(s, n_points);
}

std::vector<double> fold_cosine_coefficients(std::span<const double> samples,
                                             int fold, int count) {
  const FourierSeries s = real_fourier(samples);
  std::vector<double> out(count, 0.0);
  for (int n = 1; n <= count; ++n) {
    const std::size_t k = static_cast<std::size_t>(n * fold);
    if (k < s.a.size()) out[n - 1] = s.a[k];
  }
  return out;
}

std::vector<double> fold_sine_coefficients(std::span<const double> samples,
                                           int fold, int count) {
  const FourierSeries s = real_fourier(samples);
  std::vector<double> out(count, 0.0);
  for (int n = 1; n <= count; ++n) {
    const std::size_t k = static_cast<std::size_t>(n * fold);
    if (k < s.b.size()) out[n - 1] = s.b[k];
  }
  return out;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace vortexcaps

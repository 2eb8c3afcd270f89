#pragma once

#include <span>
#include <vector>

namespace vortexcaps {

/// Real trigonometric coefficients of samples on an even grid of size N:
/// f = a[0] + sum_{k=1}^{N/2} a[k] cos(k phi) + sum_{k=1}^{N/2-1} b[k] sin(k phi).
/// Both vectors have length N/2 + 1; b[0] and b[N/2] are zero.
struct FourierSeries {
  std::vector<double> a;
  std::vector<double> b;
};

FourierSeries real_fourier(std::span<const double> samples);

std::vector<double> synthesize(const FourierSeries& series, int n_points);

/// d/dphi of the trigonometric interpolant; the Nyquist mode is dropped.
std::vector<double> spectral_derivative(std::span<const double> samples);

/// Samples of f(phi - shift) from the trigonometric interpolant of f.
std::vector<double> shift_samples(std::span<const double> samples,
                                  double shift);

/// Zeroes every mode above k_max.
std::vector<double> lowpass(std::span<const double> samples, int k_max);

/// Samples of sum_{n=1}^{M} coeffs[n-1] cos(m n phi).
std::vector<double> synthesize_fold_cosine(std::span<const double> coeffs,
                                           int fold, int n_points);

/// Coefficients of cos(m n phi), n = 1..count.
std::vector<double> fold_cosine_coefficients(std::span<const double> samples,
                                             int fold, int count);

/// Coefficients of sin(m n phi), n = 1..count.
std::vector<double> fold_sine_coefficients(std::span<const double> samples,
                                           int fold, int count);

double max_abs(std::span<const double> values);

}  // namespace vortexcaps

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "vortexcaps/caps.hpp"
#include "vortexcaps/contour.hpp"
#include "vortexcaps/evolution.hpp"
#include "vortexcaps/functional.hpp"
#include "vortexcaps/geometry.hpp"
#include "vortexcaps/quadrature.hpp"
#include "vortexcaps/spectral.hpp"

using namespace vortexcaps;

namespace {

const FlatCapState hemisphere{pi / 2, 1.0, -1.0, 0.0};
const BandState symmetric{pi / 3, 2 * pi / 3, 1.0, -1.0, 1.0, 0.0};

std::vector<double> wave(int n) {
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double phi = 2 * pi * j / n;
    f[static_cast<std::size_t>(j)] = 0.03 * std::cos(2 * phi) + 0.01 * std::sin(5 * phi);
  }
  return f;
}

void BM_ContourRhsOne(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ZonalProfile profile = profile_of(hemisphere);
  const ContourSamples f{wave(n)};
  for (auto _ : state) benchmark::DoNotOptimize(contour_rhs(profile, f));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ContourRhsOne)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_ContourRhsBand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ZonalProfile profile = profile_of(symmetric);
  const ContourSamples f{wave(n), wave(n)};
  for (auto _ : state) benchmark::DoNotOptimize(contour_rhs(profile, f));
}
BENCHMARK(BM_ContourRhsBand)->RangeMultiplier(2)->Range(64, 512);

void BM_JacobianFd(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const int m = 2;
  const ZonalProfile profile = profile_of(hemisphere);
  const std::vector<ContourFourier> f{
      zero_contour(m, modes, default_collocation(m, modes))};
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_fd(0.1, f, profile));
}
BENCHMARK(BM_JacobianFd)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_StepRk4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ZonalProfile profile = profile_of(hemisphere);
  const ContourSamples f{wave(n)};
  for (auto _ : state) benchmark::DoNotOptimize(step_rk4(f, 1e-3, profile));
}
BENCHMARK(BM_StepRk4)->Arg(64)->Arg(256);

void BM_BandSpeeds(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int n = 1; n <= n_max; ++n) benchmark::DoNotOptimize(band_speeds(n, symmetric));
  }
}
BENCHMARK(BM_BandSpeeds)->Arg(64)->Arg(512);

void BM_InClosed(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(in_closed(n, 0.7, 2.1));
}
BENCHMARK(BM_InClosed)->Arg(1)->Arg(32);

void BM_InOracle(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(in_oracle(8, 0.7, 2.1, points));
}
BENCHMARK(BM_InOracle)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "omx/spectrum.hpp"
#include "omx/steady_state.hpp"
#include "omx/sweep.hpp"

namespace {

omx::SystemParams bistable_point() {
  omx::SystemParams p;
  p.delta_c = 1.2;
  p.delta_d = 1.2;
  p.kappa = 0.1;
  p.e_l = 1.7;
  return p;
}

void BM_SteadyRoots(benchmark::State& state) {
  const auto p = bistable_point();
  for (auto _ : state) benchmark::DoNotOptimize(omx::steady_roots(p));
}
BENCHMARK(BM_SteadyRoots);

void BM_DetuningSweep801(benchmark::State& state) {
  const omx::SystemParams p;
  for (auto _ : state) {
    benchmark::DoNotOptimize(omx::sweep_detuning(p, {-2.0, 2.0}, 801, omx::DetuningTie::equal));
  }
}
BENCHMARK(BM_DetuningSweep801)->Unit(benchmark::kMillisecond);

void BM_Hysteresis600(benchmark::State& state) {
  const auto p = bistable_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(omx::sweep_drive(p, {0.0, 3.0}, 600, omx::SweepDirection::both));
  }
}
BENCHMARK(BM_Hysteresis600)->Unit(benchmark::kMillisecond);

void BM_Map101(benchmark::State& state) {
  const auto p = bistable_point();
  const omx::MapAxis x{omx::SweptParam::kappa, {0.0, 0.2}, 101};
  const omx::MapAxis y{omx::SweptParam::chi, {0.0, 0.4}, 101};
  for (auto _ : state) benchmark::DoNotOptimize(omx::bistability_map(p, x, y));
}
BENCHMARK(BM_Map101)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  omx::SystemParams p;
  p.eta = 0.113;
  p.delta_c = -0.9;
  p.gamma_m = 0.0017;
  p.kappa = 0.078;
  p.chi = 0.03;
  const auto grid = omx::make_grid({}, p.gamma_m);
  const auto op = omx::OperatingPoint::from_photon_number(0.64);
  for (auto _ : state) benchmark::DoNotOptimize(omx::spectrum(p, op, grid));
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

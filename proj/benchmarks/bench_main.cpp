#include <benchmark/benchmark.h>

#include <random>

#include "gba/capacity.hpp"
#include "gba/frequency.hpp"
#include "gba/integrator.hpp"
#include "gba/steady_state.hpp"

namespace {

const gba::ModelParameters kParams = gba::ModelParameters::defaults();

void BM_Rhs(benchmark::State& state) {
  const gba::StateVector x{0.2, 0.05, 0.7, 16.0, 11.0, 0.11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gba::rhs(0.0, x, {x, x}, 0.1, 1.0, kParams));
  }
}
BENCHMARK(BM_Rhs);

void BM_IntegrateTenDays(benchmark::State& state) {
  const gba::IntegratorConfig cfg;
  const auto input = gba::InputProfile::constant(0.1);
  const gba::StateVector x0{0.2, 0.05, 0.7, 16.0, 11.0, 0.11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gba::integrate(kParams, gba::CircadianDrive{}, input, x0, cfg));
  }
}
BENCHMARK(BM_IntegrateTenDays)->Unit(benchmark::kMillisecond);

void BM_OperatingPoint(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gba::operating_point(kParams, gba::CircadianDrive{}, 0.1));
  }
}
BENCHMARK(BM_OperatingPoint)->Unit(benchmark::kMillisecond);

void BM_TransferFunction(benchmark::State& state) {
  const auto sys = gba::to_delay_system(gba::operating_point(kParams, gba::CircadianDrive{}, 0.1));
  double w = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gba::transfer_function(sys, w));
    w = w < 1.0 ? w * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_TransferFunction);

void BM_Bode(benchmark::State& state) {
  const auto sys = gba::operating_point(kParams, gba::CircadianDrive{}, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gba::bode(sys, 1e-6, 1.0, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Bode)->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_WaterFillBins(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> unit(1e-6, 1.0);
  std::vector<double> gain(n), measure(n);
  for (auto& g : gain) g = unit(rng);
  for (auto& m : measure) m = unit(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gba::water_fill_bins(gain, measure, 1e-2, 1.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WaterFillBins)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

}  // namespace

BENCHMARK_MAIN();

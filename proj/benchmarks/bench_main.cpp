#include <benchmark/benchmark.h>

#include <random>

#include "wpt/wpt.hpp"

namespace {

using namespace wpt;

const SpiralCoil kCoil{0.100, 8, 0.004, 0.002, {}};
constexpr double kD0 = 57.55e-3;

void BM_FilamentMutualCoaxial(benchmark::State& state) {
  const FilamentLoop a{0.05, {}}, b{0.042, {0, 0, 0.01}};
  for (auto _ : state) benchmark::DoNotOptimize(filament_mutual(a, b));
}
BENCHMARK(BM_FilamentMutualCoaxial);

void BM_FilamentMutualLateral(benchmark::State& state) {
  const FilamentLoop a{0.05, {}}, b{0.042, {0, 0.03, static_cast<double>(state.range(0)) * 1e-3}};
  for (auto _ : state) benchmark::DoNotOptimize(filament_mutual(a, b));
}
BENCHMARK(BM_FilamentMutualLateral)->Arg(0)->Arg(10)->Arg(50);

void BM_CoilMutual(benchmark::State& state) {
  const SpiralCoil b = kCoil.moved_to({0, 0.3 * kD0, 0.03});
  for (auto _ : state) benchmark::DoNotOptimize(coil_mutual(kCoil, b));
}
BENCHMARK(BM_CoilMutual);

void BM_UncouplingDistance(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_uncoupling_distance(kCoil, 0.0));
}
BENCHMARK(BM_UncouplingDistance)->Unit(benchmark::kMillisecond);

void BM_SolveCurrents(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WptSystem s;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> k(-0.1, 0.1);
  const double l = 5e-6;
  for (int i = 0; i < n; ++i) {
    const Role role = i == n - 1 ? Role::Rx : (i < n / 2 ? Role::Tx : Role::Repeater);
    s.resonators.push_back({role, l, tune_capacitance(l, 1e6), 0.05, "c" + std::to_string(i), {}});
  }
  s.mutual = RealMatrix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.mutual(i, j) = s.mutual(j, i) = k(rng) * l;
  s.load_resistance = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_currents(s));
}
BENCHMARK(BM_SolveCurrents)->Arg(3)->Arg(9)->Arg(33);

void BM_Sweep(benchmark::State& state) {
  LinearArrayLayout layout;
  layout.n_channels = 4;
  layout.channel_spacing = kD0;
  layout.z_tx_rp = 0.01;
  layout.z_rp_rx = 0.02;
  layout.coil = kCoil;
  ElectricalParams e;
  e.default_resistance = 0.055;
  e.load_resistance = 12.5;
  const ArraySystemFactory f(layout, e);
  SweepSpec spec;
  spec.y_end = 3 * kD0;
  spec.steps = 61;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_receiver(f, spec, 1));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

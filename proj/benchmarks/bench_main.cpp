// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "mvsde/bounds.hpp"
#include "mvsde/rng.hpp"
#include "mvsde/sim.hpp"

namespace {

using namespace mvsde;

void BM_Philox(benchmark::State& state) {
  Philox4x32::Counter ctr{0, 0, 0, 0};
  for (auto _ : state) {
    ctr = Philox4x32::apply(ctr, {1, 2});
    benchmark::DoNotOptimize(ctr);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

void BM_NoiseDraw(benchmark::State& state) {
  const NoisePlan plan(42);
  std::uint64_t n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(plan.idiosyncratic(0, n % 64, n++));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NoiseDraw);

void BM_Thresholds(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::stabilization_thresholds(22.0, 3.0, 11.0));
    benchmark::DoNotOptimize(bounds::decay_rate(5e-4, 22.0, 3.0, 11.0));
  }
}
BENCHMARK(BM_Thresholds);

// One Euler-Maruyama step of the N-particle benchmark system.
void BM_Step(benchmark::State& state) {
  const auto model = LinearMeanFieldModel::scalar(3, 1, 1, 1, 1, 1);
  SimConfig c;
  c.n_particles = static_cast<std::size_t>(state.range(0));
  c.dt = 5e-4;
  c.horizon = 1.0;
  c.delay_steps = 1;
  const auto control = make_control(22.0, c);
  const NoisePlan noise(7);
  auto e = init_ensemble(c, 1, Vector{1.0});
  for (auto _ : state) benchmark::DoNotOptimize(step(e, model, control, noise, c, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(50)->Arg(1024)->Arg(16384);

}  // namespace
BENCHMARK_MAIN();

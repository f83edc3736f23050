#include <benchmark/benchmark.h>

#include "darkspec/darklines.hpp"
#include "darkspec/oracle.hpp"

using namespace darkspec;

namespace {

const FrequencyGrid kGrid{-6.0, 6.0, 4001};

EmitterConfig lambda_delta() {
  return EmitterConfig::lambda_type(DomModel::edge_plus_delta_defect(0.0, 1.0, -2.0), 1.0);
}

EmitterConfig driven_smoothed() {
  return EmitterConfig::laser_driven(DomModel::smoothed_edge(0.0, 0.3), 1.0, 1.0, -1.5, 1.0, 0.0);
}

void BM_EvalGridLambda(benchmark::State& state) {
  const auto cfg = lambda_delta();
  for (auto _ : state) benchmark::DoNotOptimize(eval_grid(cfg, kGrid));
  state.SetItemsProcessed(state.iterations() * kGrid.n);
}
BENCHMARK(BM_EvalGridLambda)->Unit(benchmark::kMillisecond);

void BM_EvalGridDriven(benchmark::State& state) {
  const auto cfg = driven_smoothed();
  for (auto _ : state) benchmark::DoNotOptimize(eval_grid(cfg, kGrid));
  state.SetItemsProcessed(state.iterations() * kGrid.n);
}
BENCHMARK(BM_EvalGridDriven)->Unit(benchmark::kMillisecond);

void BM_FindZeros(benchmark::State& state) {
  const Spectrum s = eval_grid(lambda_delta(), kGrid);
  for (auto _ : state) benchmark::DoNotOptimize(find_zeros(s));
}
BENCHMARK(BM_FindZeros)->Unit(benchmark::kMillisecond);

void BM_KernelTimeSmoothed(benchmark::State& state) {
  const DomModel m = DomModel::smoothed_edge(0.0, 0.3);
  double tau = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_time(m, CouplingStrength{1.0}, tau));
    tau = tau < 10.0 ? tau * 1.01 : 0.1;
  }
}
BENCHMARK(BM_KernelTimeSmoothed);

void BM_Volterra(benchmark::State& state) {
  const auto cfg = lambda_delta();
  VolterraOptions opts;
  opts.check_convergence = false;
  const double t_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_volterra(cfg, t_max, 0.01, opts));
}
BENCHMARK(BM_Volterra)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CombEvolve(benchmark::State& state) {
  const auto cfg = lambda_delta();
  const ModeComb comb = build_mode_comb(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretized_mode_evolve(cfg, comb, kGrid, 50.0, 0.01));
  }
}
BENCHMARK(BM_CombEvolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

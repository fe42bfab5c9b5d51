// Serial reference vs OpenMP for the grid-shaped workloads.

#include <benchmark/benchmark.h>

#include <vector>

#include "laguerre/expansion.hpp"
#include "laguerre/fractional.hpp"
#include "laguerre/lipschitz.hpp"
#include "laguerre/trajectory.hpp"

using namespace laguerre;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "openmp"); }

void BM_KernelTrajectory(benchmark::State& state) {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 4, 7);
  const Function f = [&](std::span<const double> y) { return synthesize(e, y); };
  KernelTrajectoryOptions opts;
  opts.policy = policy_of(state);
  const std::vector<double> x{1.3};
  for (auto _ : state) {
    KernelTrajectory u(f, p, x, opts);
    benchmark::DoNotOptimize(u.value(0.5, 0));
  }
  label(state);
}

void BM_SeminormSpectral(benchmark::State& state) {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 6, 3);
  const auto grids = default_grids(1);
  for (auto _ : state) benchmark::DoNotOptimize(lipschitz_seminorm(e, 0.8, grids, 0, policy_of(state)).A_beta);
  label(state);
}

void BM_OperatorSeminorm(benchmark::State& state) {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 6, 3);
  const auto grids = default_grids(1);
  FracOpConfig cfg = FracOpConfig::for_order(0.3);
  cfg.policy = ExecPolicy::Serial;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        operator_seminorm(FracOp::FractionalDerivative, e, 0.3, 0.5, grids, cfg, policy_of(state)).A_beta);
  }
  label(state);
}

void BM_KernelSeminorm(benchmark::State& state) {
  const auto p = MultiIndexParams::make({0.5});
  const auto e = LaguerreExpansion::random(p, 3, 5);
  const Function f = [&](std::span<const double> y) { return synthesize(e, y); };
  const LipschitzGrids grids{dyadic_t_grid(5.0, 3), log_x_grid(1, 4, 0.1, 10.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lipschitz_seminorm(f, p, 0.5, grids, 0, {}, policy_of(state)).A_beta);
  }
  label(state);
}

}  // namespace

BENCHMARK(BM_KernelTrajectory)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeminormSpectral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OperatorSeminorm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSeminorm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <vector>

#include "photondm/attenuation.hpp"
#include "photondm/bandit.hpp"
#include "photondm/entangled.hpp"
#include "photondm/feasibility.hpp"
#include "photondm/oam.hpp"
#include "photondm/ratio_solver.hpp"
#include "photondm/rng.hpp"
#include "photondm/sampling.hpp"

using namespace photondm;

static void BM_closed_distribution(benchmark::State& state) {
  Engine engine = make_engine(1);
  const OamSystemConfig config =
      sample_oam_config(engine, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    JointDecisionDistribution dist = joint_distribution_closed(config);
    benchmark::DoNotOptimize(dist);
  }
}
BENCHMARK(BM_closed_distribution)->DenseRange(2, 6);

static void BM_oracle_distribution(benchmark::State& state) {
  Engine engine = make_engine(1);
  const OamSystemConfig config =
      sample_oam_config(engine, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    JointDecisionDistribution dist = joint_distribution_oracle(config);
    benchmark::DoNotOptimize(dist);
  }
}
BENCHMARK(BM_oracle_distribution)->DenseRange(2, 6);

static void BM_entangled_general(benchmark::State& state) {
  Engine engine = make_engine(2);
  const EntangledConfig config = sample_entangled_config(engine);
  for (auto _ : state) {
    JointDecisionDistribution dist = entangled_distribution_general(config);
    benchmark::DoNotOptimize(dist);
  }
}
BENCHMARK(BM_entangled_general);

static void BM_sweep_row_oam(benchmark::State& state) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    SweepRow row = sweep_row(SystemId::oam, 42, index++);
    benchmark::DoNotOptimize(row);
  }
}
BENCHMARK(BM_sweep_row_oam);

static void BM_sweep_row_entangled(benchmark::State& state) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    SweepRow row = sweep_row(SystemId::entangled, 42, index++);
    benchmark::DoNotOptimize(row);
  }
}
BENCHMARK(BM_sweep_row_entangled);

static void BM_sweep_row_attenuation(benchmark::State& state) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    SweepRow row = sweep_row(SystemId::attenuation, 42, index++);
    benchmark::DoNotOptimize(row);
  }
}
BENCHMARK(BM_sweep_row_attenuation);

static void BM_solve_oam_ratio(benchmark::State& state) {
  const AsymmetryRatio target = AsymmetryRatio::finite(4.0);
  for (auto _ : state) {
    RatioSolution solution = solve_oam_ratio(target);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_solve_oam_ratio);

static void BM_frontier_roundtrip(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.01 * (1.0 + i));
  for (auto _ : state) {
    double error = frontier_conversion_check(SystemId::oam, grid);
    benchmark::DoNotOptimize(error);
  }
}
BENCHMARK(BM_frontier_roundtrip);

static void BM_bandit_trials(benchmark::State& state) {
  Engine engine = make_engine(3);
  const JointDecisionDistribution dist =
      joint_distribution_closed(sample_oam_config(engine));
  const std::vector<double> means = {0.9, 0.1};
  const std::uint64_t trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    BanditRunReport report = run_bandit(dist, means, trials, 7);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          state.range(0));
}
BENCHMARK(BM_bandit_trials)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <vector>

#include "aags/choquet.hpp"
#include "aags/env/grid_world.hpp"
#include "aags/env/sailing_world.hpp"
#include "aags/evidence.hpp"
#include "aags/planner.hpp"

namespace {

using namespace aags;

void BM_Dist2Belief(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint64_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = 3 + 7 * i;
  const EmpiricalDistribution p(counts);
  assemble_system(n);
  for (auto _ : state) benchmark::DoNotOptimize(dist2belief(p, 0.1));
}
BENCHMARK(BM_Dist2Belief)->DenseRange(2, 8, 2);

void BM_AssembleSystemUncached(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MassSystem(n));
}
BENCHMARK(BM_AssembleSystemUncached)->DenseRange(2, 8, 2);

void BM_ChoquetPair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint64_t> counts(n, 5);
  const MassAssignment m = dist2belief(EmpiricalDistribution(counts), 0.1);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) / static_cast<double>(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(choquet_lower(m.belief, v, {0.0, 1.0}));
    benchmark::DoNotOptimize(choquet_upper(m.belief, v, {0.0, 1.0}));
  }
}
BENCHMARK(BM_ChoquetPair)->DenseRange(2, 8, 2);

// One planning step with the experiment budget of 500 trajectories.
void BM_GridSearchStep(benchmark::State& state) {
  const env::GridWorld grid(env::GridWorldConfig{20, 20, 0.1, {0, 0}, {19, 19}, 1.0, 0.0, 0.95});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    AagsConfig c;
    c.n_trajectories = 500;
    c.seed = ++seed;
    AagsPlanner planner(grid, grid.spec(), c);
    benchmark::DoNotOptimize(planner.search(grid.encode({0, 0})));
  }
}
BENCHMARK(BM_GridSearchStep)->Unit(benchmark::kMillisecond);

void BM_SailingSearchStep(benchmark::State& state) {
  env::SailingWorldConfig cfg;
  cfg.width = 20;
  cfg.height = 20;
  cfg.goal = {19, 19};
  cfg.initial_wind = 2;
  const env::SailingWorld world(cfg);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    AagsConfig c;
    c.n_trajectories = 500;
    c.seed = ++seed;
    AagsPlanner planner(world, world.spec(), c);
    benchmark::DoNotOptimize(planner.search(world.encode({{0, 0}, 1, 2})));
  }
}
BENCHMARK(BM_SailingSearchStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "teamalloc/collaboration.hpp"
#include "teamalloc/coverage/evaluator.hpp"
#include "teamalloc/coverage/lloyd.hpp"
#include "teamalloc/coverage/voronoi.hpp"
#include "teamalloc/harness.hpp"
#include "teamalloc/oracle.hpp"
#include "teamalloc/random.hpp"

using namespace teamalloc;

namespace {

coverage::CoverageField field(int grid) {
  return coverage::CoverageField(coverage::Domain({}, grid, grid),
                                 coverage::DensityField::gaussian(0.5, 0.3));
}

void BM_VoronoiAssignment(benchmark::State& state) {
  const auto f = field(static_cast<int>(state.range(0)));
  Rng rng = make_rng(1);
  const auto robots = coverage::random_positions(f.domain(), static_cast<int>(state.range(1)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(coverage::assign_voronoi(robots, f.domain()));
  state.SetItemsProcessed(state.iterations() * f.domain().cells());
}
BENCHMARK(BM_VoronoiAssignment)->Args({100, 4})->Args({100, 16})->Args({200, 16});

void BM_LocationalCost(benchmark::State& state) {
  const auto f = field(100);
  Rng rng = make_rng(2);
  const auto robots = coverage::random_positions(f.domain(), static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(coverage::locational_cost(robots, f));
}
BENCHMARK(BM_LocationalCost)->Arg(4)->Arg(16);

void BM_Lloyd(benchmark::State& state) {
  const auto f = field(100);
  Rng rng = make_rng(3);
  const auto robots = coverage::random_positions(f.domain(), static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(coverage::lloyd(robots, f));
}
BENCHMARK(BM_Lloyd)->Arg(2)->Arg(8)->Arg(13)->Unit(benchmark::kMillisecond);

void BM_RunCollaboration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int total = static_cast<int>(state.range(1));
  Rng rng = make_rng(4);
  const auto teams = oracle::random_teams(rng, m, total + 1);
  std::vector<int> start(static_cast<std::size_t>(m), 1);
  start[0] = total - (m - 1);
  const Allocation initial(start);
  const TeamGraph graph = TeamGraph::complete(m);
  for (auto _ : state) benchmark::DoNotOptimize(run_collaboration(teams, graph, initial));
}
BENCHMARK(BM_RunCollaboration)->Args({4, 16})->Args({10, 100})->Args({50, 1000});

void BM_BruteForce(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int total = static_cast<int>(state.range(1));
  Rng rng = make_rng(5);
  const auto teams = oracle::random_teams(rng, m, total + 1);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_optimal(teams, {m, total, 1}));
}
BENCHMARK(BM_BruteForce)->Args({3, 9})->Args({4, 16})->Args({5, 20});

}  // namespace
BENCHMARK_MAIN();

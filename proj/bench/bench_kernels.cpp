// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "treewalk/chain.hpp"
#include "treewalk/estimators.hpp"
#include "treewalk/exact.hpp"

using namespace treewalk;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_RootHitsSuccinct(benchmark::State& state) {
  const SuccinctTree tree = hash_random_tree(2, 8, 0.8);
  const SuccinctTopology topo(tree);
  const std::uint64_t m = 2048, steps = 500;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_root_hits(topo, m, steps, RandomStream(1, 0), true, exec_of(state)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m * steps));
  label(state);
}
BENCHMARK(BM_RootHitsSuccinct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RootHitsCompiled(benchmark::State& state) {
  const ExplicitTree tree = enumerate(full_tree(8), 1000);
  const CompiledTopology topo(tree);
  const std::uint64_t m = 2048, steps = 500;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_root_hits(topo, m, steps, RandomStream(1, 0), true, exec_of(state)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * m * steps));
  label(state);
}
BENCHMARK(BM_RootHitsCompiled)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SampleRestarts(benchmark::State& state) {
  const SuccinctTree tree = comb(10);
  const SuccinctTopology topo(tree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_restarts(topo, 1024, 400, RandomStream(2, 0), true, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_SampleRestarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Conductance(benchmark::State& state) {
  const ExplicitTree tree = enumerate(comb(8), 1000);
  const auto chain = transition_matrix(tree, true);
  const auto profile = stationary_exact(tree);
  for (auto _ : state) benchmark::DoNotOptimize(conductance_exact(chain, profile, 18, exec_of(state)));
  state.counters["states"] = static_cast<double>(tree.size());
  label(state);
}
BENCHMARK(BM_Conductance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MixingTime(benchmark::State& state) {
  const ExplicitTree tree = enumerate(full_tree(7), 1000);
  const auto chain = transition_matrix(tree, true);
  const auto profile = stationary_exact(tree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixing_time_exact(chain, profile, Rational(1, 4), 1u << 20, exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_MixingTime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_UniformBaseline(benchmark::State& state) {
  const SuccinctTree tree = hash_random_tree(99, 10, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_size_uniform(tree, 0.05, 0.1, RandomStream(3, 0), exec_of(state)));
  }
  label(state);
}
BENCHMARK(BM_UniformBaseline)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Exhaustive cut check: OpenMP Gray-code kernel against the serial reference.

#include <benchmark/benchmark.h>

#include "../tests/support.hpp"
#include "cutsparse/sparsifier.hpp"
#include "cutsparse/verify.hpp"

using namespace cutsparse;

namespace {

struct Instance {
  WeightedGraph g;
  SparseGraph h;
};

Instance make_instance(std::uint32_t n) {
  auto g = fixtures::random_multigraph(n, 40 * n, 8, n);
  SparsifyConfig cfg;
  cfg.rho_target = 2;
  auto h = sparsify(g, cfg);
  return {std::move(g), std::move(h)};
}

void BM_CheckParallel(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_sparsifier(inst.g, inst.h).max_rel_error);
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << (state.range(0) - 1)) - 1));
}

void BM_CheckSerial(benchmark::State& state) {
  const auto inst = make_instance(static_cast<std::uint32_t>(state.range(0)));
  const auto g = SparseGraph::from_integer(inst.g);
  for (auto _ : state) benchmark::DoNotOptimize(check_sparsifier_serial(g, inst.h).max_rel_error);
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << (state.range(0) - 1)) - 1));
}

void BM_Sparsify(benchmark::State& state) {
  const auto g = fixtures::random_multigraph(static_cast<std::uint32_t>(state.range(0)), 100 * state.range(0),
                                            1000, 7);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SparsifyConfig cfg;
    cfg.rho_target = 4;
    cfg.seed = seed++;
    benchmark::DoNotOptimize(sparsify(g, cfg).num_edges());
  }
}

}  // namespace

BENCHMARK(BM_CheckParallel)->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckSerial)->DenseRange(10, 18, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sparsify)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "bbr/algebra.hpp"
#include "bbr/bounds.hpp"
#include "bbr/tree_search.hpp"

using namespace bbr;

static void BM_CountAutomorphisms(benchmark::State& state) {
  const auto t = build_abelian(abelian_from_invariant_factors({2, 4}));
  for (auto _ : state) benchmark::DoNotOptimize(count_automorphisms(t));
}
BENCHMARK(BM_CountAutomorphisms);

static void BM_EnumerateOrbit(benchmark::State& state) {
  const auto t = build_max_chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_x_g(t));
}
BENCHMARK(BM_EnumerateOrbit)->DenseRange(4, 7);

static void BM_MinimalWorstCase(benchmark::State& state) {
  const auto ops = enumerate_x_g(build_max_chain(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_worst_case(ops));
}
BENCHMARK(BM_MinimalWorstCase)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

static void BM_MinimalWorstCaseZ5(benchmark::State& state) {
  const auto ops = enumerate_x_g(build_abelian(abelian_from_invariant_factors({5})));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_worst_case(ops));
}
BENCHMARK(BM_MinimalWorstCaseZ5)->Unit(benchmark::kMillisecond);

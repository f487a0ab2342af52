#include <benchmark/benchmark.h>

#include "bbr/algebra.hpp"
#include "bbr/recovery.hpp"

using namespace bbr;

static void BM_RecoverAbelianCyclic(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto h = new_hidden(abelian_from_invariant_factors({n}), 1);
  for (auto _ : state) {
    Oracle o(h);
    benchmark::DoNotOptimize(recover_abelian(o));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RecoverAbelianCyclic)->RangeMultiplier(4)->Range(4, 256)->Complexity();

static void BM_RecoverOrder11Eight(benchmark::State& state) {
  const auto h = new_hidden(abelian_from_invariant_factors({11}), 1);
  for (auto _ : state) {
    Oracle o(h);
    benchmark::DoNotOptimize(recover_order11_eight(o));
  }
}
BENCHMARK(BM_RecoverOrder11Eight);

static void BM_RecoverMaxChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = new_hidden(MaxChainSpec{n}, 1);
  for (auto _ : state) {
    Oracle o(h);
    benchmark::DoNotOptimize(recover_max_chain(o));
  }
}
BENCHMARK(BM_RecoverMaxChain)->RangeMultiplier(4)->Range(8, 512);

static void BM_RecoverRingFull(benchmark::State& state) {
  const auto h = new_hidden_ring(parse_ring("gf8"), 1);
  for (auto _ : state) {
    Oracle add(h.add), mul(h.mul);
    benchmark::DoNotOptimize(recover_ring_full(add, mul));
  }
}
BENCHMARK(BM_RecoverRingFull);

BENCHMARK_MAIN();

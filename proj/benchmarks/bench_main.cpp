#include <benchmark/benchmark.h>

#include "lieseq/builtins.hpp"
#include "lieseq/exact_linalg.hpp"
#include "lieseq/koszul.hpp"
#include "lieseq/spectral.hpp"

using namespace lieseq;

namespace {

KoszulComplex complex_of(const char* name, Ring ring) { return KoszulComplex(builtin::by_name(name).with_ring(ring)); }

// Fresh complex per iteration: blocks are cached inside KoszulComplex.
void BM_BuildD0Sl3(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto c = complex_of("sl3", Ring::rationals());
    benchmark::DoNotOptimize(c.d0(s, 3).nnz());
  }
}
BENCHMARK(BM_BuildD0Sl3)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RankD0Sl3(benchmark::State& state, Ring ring) {
  const auto c = complex_of("sl3", ring);
  const auto m = c.d0(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::rank(m, ring));
}
BENCHMARK_CAPTURE(BM_RankD0Sl3, q, Ring::rationals())->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RankD0Sl3, f5, Ring::prime_field(5))->Unit(benchmark::kMillisecond);

void BM_E1Sl2(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto c = complex_of("sl2", Ring::prime_field(5));
    benchmark::DoNotOptimize(spectral::compute_E1(c, {N}).dims.size());
  }
}
BENCHMARK(BM_E1Sl2)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AxiomsSl2OverZ(benchmark::State& state) {
  for (auto _ : state) {
    const auto c = complex_of("sl2", Ring::integers());
    benchmark::DoNotOptimize(check_differential_axioms(c, 6).ok());
  }
}
BENCHMARK(BM_AxiomsSl2OverZ)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "uniformity_lab/counting.hpp"
#include "uniformity_lab/fourier.hpp"
#include "uniformity_lab/gowers.hpp"
#include "uniformity_lab/harness.hpp"

namespace {

using namespace ulab;

FiniteFunction phases(std::int64_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_function(rng, one_to(n), Family::Phases);
}

void BM_GowersU2(benchmark::State& state) {
  const FiniteFunction f = phases(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm_raw(f, GowersDegree(2)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GowersU2)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_GowersU3(benchmark::State& state) {
  const FiniteFunction f = phases(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm_raw(f, GowersDegree(3)));
}
BENCHMARK(BM_GowersU3)->RangeMultiplier(2)->Range(16, 128);

void BM_CountingOperator(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const CountingParams p(1, N);
  const FiniteFunction f0 = phases(N, 3);
  const FiniteFunction f1 = phases(N + p.M(), 4);
  const FiniteFunction f2 = phases(2 * N, 5);
  for (auto _ : state) benchmark::DoNotOptimize(counting_operator(p, f0, f1, f2));
}
BENCHMARK(BM_CountingOperator)->RangeMultiplier(4)->Range(256, 65536);

void BM_DualFunction(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const CountingParams p(2, N);
  const FiniteFunction f0 = phases(N, 6);
  const FiniteFunction f1 = phases(N, 7);
  for (auto _ : state) benchmark::DoNotOptimize(dual_function(p, f0, f1));
}
BENCHMARK(BM_DualFunction)->RangeMultiplier(4)->Range(256, 65536);

void BM_FtGrid(benchmark::State& state) {
  const FiniteFunction f = phases(state.range(0), 8);
  for (auto _ : state) benchmark::DoNotOptimize(ft_grid(f, 4 * state.range(0)));
}
BENCHMARK(BM_FtGrid)->RangeMultiplier(4)->Range(256, 65536);

void BM_SupFt(benchmark::State& state) {
  const FiniteFunction f = phases(state.range(0), 9);
  for (auto _ : state) benchmark::DoNotOptimize(sup_ft(f));
}
BENCHMARK(BM_SupFt)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();

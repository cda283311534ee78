#include <benchmark/benchmark.h>

#include <cstdint>

#include "lpp/experiments.hpp"
#include "lpp/geodesic.hpp"
#include "lpp/passage.hpp"
#include "lpp/randfield.hpp"

namespace {

using namespace lpp;

void BM_Weight(benchmark::State& state) {
  const FieldSpec f{12345};
  std::int64_t x = 0;
  double sum = 0.0;
  for (auto _ : state) {
    sum += f(x, -x);
    ++x;
  }
  benchmark::DoNotOptimize(sum);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Weight);

void BM_BuildTable(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto t = build_table(FieldSpec{seed++}, {0, 0}, {n, n});
    benchmark::DoNotOptimize(t.cell_count());
  }
  state.SetItemsProcessed(state.iterations() * (n + 1) * (n + 1));
}
BENCHMARK(BM_BuildTable)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ConstrainedStrip(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(constrained_passage(FieldSpec{seed++}, 1000, 0.25));
  }
}
BENCHMARK(BM_ConstrainedStrip)->Unit(benchmark::kMillisecond);

void BM_Backtrack(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto t = build_table(FieldSpec{7}, {0, 0}, {n, n});
  for (auto _ : state) benchmark::DoNotOptimize(backtrack(t, {n, n}).vertices.size());
}
BENCHMARK(BM_Backtrack)->Arg(1000);

void BM_Profile(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto t = build_table(FieldSpec{7}, {0, 0}, {n, n});
  for (auto _ : state) benchmark::DoNotOptimize(sup_abs(profile(t, {n, n})));
}
BENCHMARK(BM_Profile)->Arg(1000);

void BM_BlockDecomposition(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(block_decomposition(FieldSpec{seed++}, 1000, 0.25, 4.0).sum_y);
  }
}
BENCHMARK(BM_BlockDecomposition)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

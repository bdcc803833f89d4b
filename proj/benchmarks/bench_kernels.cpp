#include <benchmark/benchmark.h>

#include "spq/corep.hpp"
#include "spq/sphere.hpp"

using namespace spq;

static void BM_CorepOfWord(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const WeylWord w = longest_word(n);
  for (auto _ : st) benchmark::DoNotOptimize(corep_of_word(w, true, 6, 0.5).term_count());
}
BENCHMARK(BM_CorepOfWord)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_OperatorProduct(benchmark::State& st) {
  auto g = sphere_generators(4, 2, static_cast<int>(st.range(0)), 0.5);
  for (auto _ : st) benchmark::DoNotOptimize((adjoint(g[1]) * g[3] * g[4]).terms().size());
}
BENCHMARK(BM_OperatorProduct)->Arg(8)->Arg(16);

static void BM_InteriorResidual(benchmark::State& st) {
  const int D = static_cast<int>(st.range(0));
  auto g = sphere_generators(4, 2, D, 0.5);
  auto op = g[4] * adjoint(g[4]) - adjoint(g[4]) * g[4];
  auto ts = diagonal_torus_samples(1, 4);
  for (auto _ : st) benchmark::DoNotOptimize(interior_residual(op, ts));
}
BENCHMARK(BM_InteriorResidual)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_RttCheck(benchmark::State& st) {
  auto a = corep_of_word(omega_word(4, 2), true, 8, 0.5);
  auto rels = rtt_relations(2, 0.5, RMatrixForm::standard);
  auto ts = diagonal_torus_samples(2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(check_corep_relations(a, rels, ts).passed());
}
BENCHMARK(BM_RttCheck)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

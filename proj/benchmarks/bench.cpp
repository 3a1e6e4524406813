#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/reliability.hpp"
#include "relgraph/spanning.hpp"
#include "relgraph/structure.hpp"

using namespace relgraph;

static void BM_UnrelExactHeawood(benchmark::State& state) {
  const auto g = oracle::heawood();
  for (auto _ : state) benchmark::DoNotOptimize(unrel_exact(g));
}
BENCHMARK(BM_UnrelExactHeawood)->Unit(benchmark::kMillisecond);

// girth-6 family at growing n; the exact engine's cost grows with n
static void BM_UnrelExactFamily(benchmark::State& state) {
  const auto g = girth6_family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unrel_exact(g));
}
BENCHMARK(BM_UnrelExactFamily)->Arg(14)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_BruteForcePetersen(benchmark::State& state) {
  const auto g = oracle::petersen();
  for (auto _ : state) benchmark::DoNotOptimize(unrel_bruteforce(g));
}
BENCHMARK(BM_BruteForcePetersen)->Unit(benchmark::kMillisecond);

static void BM_GammaTableHeawood(benchmark::State& state) {
  const MarkedStructure ms{oracle::heawood(), edge_bit(0) | edge_bit(7) | edge_bit(12) | edge_bit(19)};
  for (auto _ : state) benchmark::DoNotOptimize(gamma_table(ms));
}
BENCHMARK(BM_GammaTableHeawood)->Unit(benchmark::kMillisecond);

static void BM_GammaCountsTruncated(benchmark::State& state) {
  const auto index = ChainCutIndex::truncated(oracle::heawood(), 7);
  EdgeMask marks = 0b1111;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.gamma_counts(marks));
    marks = (marks << 1 | marks >> 20) & ((EdgeMask{1} << 21) - 1);
  }
}
BENCHMARK(BM_GammaCountsTruncated)->Unit(benchmark::kMicrosecond);

static void BM_TreeNumber(benchmark::State& state) {
  const auto g = girth6_family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tree_number(g));
}
BENCHMARK(BM_TreeNumber)->Arg(14)->Arg(40)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

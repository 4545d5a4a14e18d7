// Macro-benchmarks for the hot paths: window composition, dynamical
// partition refinement, measure pushforward chains, and the spanning-set
// grid sweep.  Each iteration gets a fresh budget so caching inside shared
// state does not flatter the numbers.
#include <benchmark/benchmark.h>

#include "ndsent/budget.hpp"
#include "ndsent/catalog.hpp"
#include "ndsent/covers.hpp"
#include "ndsent/interval.hpp"
#include "ndsent/rational.hpp"
#include "ndsent/sequences.hpp"
#include "ndsent/spanning.hpp"
#include "ndsent/system.hpp"

namespace {

// Composing the aperiodic two-map window multiplies piece counts at every
// zigzag step, so the argument is kept small.
void BM_ComposeWindowTwoMap(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("bo");
  const long long n = state.range(0);
  for (auto _ : state) {
    nds::Budget budget;
    benchmark::DoNotOptimize(
        entry.system->compose_window(nds::Integer(0), n, budget));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ComposeWindowTwoMap)->Arg(2)->Arg(4)->Arg(8)->Complexity();

void BM_ComposeWindowDoubling(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("doubling");
  const long long n = state.range(0);
  for (auto _ : state) {
    nds::Budget budget;
    benchmark::DoNotOptimize(
        entry.system->compose_window(nds::Integer(0), n, budget));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ComposeWindowDoubling)->Arg(4)->Arg(8)->Arg(12)->Complexity();

void BM_JoinedPartitionTwoMap(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("bo");
  const nds::PartitionSequence& thirds = entry.partitions.front().second;
  const long long n = state.range(0);
  for (auto _ : state) {
    nds::Budget budget;
    benchmark::DoNotOptimize(
        nds::joined_partition(*entry.system, thirds, nds::Integer(0), n,
                              budget));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_JoinedPartitionTwoMap)->Arg(4)->Arg(8)->Arg(16)->Complexity();

void BM_JoinedPartitionDoubling(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("doubling");
  const nds::PartitionSequence& halves = entry.partitions.front().second;
  const long long n = state.range(0);
  for (auto _ : state) {
    nds::Budget budget;
    benchmark::DoNotOptimize(
        nds::joined_partition(*entry.system, halves, nds::Integer(0), n,
                              budget));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_JoinedPartitionDoubling)->Arg(4)->Arg(8)->Arg(12)->Complexity();

void BM_PushforwardChain(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("bo");
  const long long n = state.range(0);
  for (auto _ : state) {
    nds::Budget budget;
    nds::MeasureSequence mus(entry.system, entry.mu0);
    benchmark::DoNotOptimize(mus.at(n, budget));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_PushforwardChain)->Arg(4)->Arg(16)->Arg(64)->Complexity();

void BM_SpanningGrid(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("doubling");
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    nds::Budget budget;
    benchmark::DoNotOptimize(
        nds::spanning_bounds(*entry.system, 8, nds::Rational(1, 16),
                             nds::Rational(1, 128), budget, workers));
  }
}
BENCHMARK(BM_SpanningGrid)->Arg(1)->Arg(2)->Arg(4)
    ->Unit(benchmark::kMillisecond);

void BM_CoverRefinement(benchmark::State& state) {
  const nds::CatalogEntry entry = nds::catalog_entry("doubling");
  const long long n = state.range(0);
  const nds::Rational delta(1, 100);
  const nds::Rational half(1, 2);
  nds::CoverSequence covers = nds::CoverSequence::constant(
      nds::OpenCover({nds::Interval::open(nds::Rational(0) - delta,
                                          half + delta),
                      nds::Interval::open(half - delta,
                                          nds::Rational(1) + delta)}));
  for (auto _ : state) {
    nds::Budget budget;
    benchmark::DoNotOptimize(
        nds::cover_refinement_count(*entry.system, covers, n, budget));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CoverRefinement)->Arg(4)->Arg(6)->Arg(8)->Complexity();

}  // namespace

BENCHMARK_MAIN();

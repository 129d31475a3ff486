// Serial vs OpenMP versions of the parallel kernels.

#include <benchmark/benchmark.h>

#include "ucnet/channel_search.hpp"
#include "ucnet/common_info.hpp"
#include "ucnet/region.hpp"

using namespace ucnet;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_MaximizeChannel(benchmark::State& state) {
  const auto p = dsbs(0.1);
  const auto obj = functional_objective(measures(p), 0.2, -0.4, -0.4);
  SearchOptions so;
  so.restarts = 64;
  for (auto _ : state) benchmark::DoNotOptimize(maximize_channel(p, obj, so, exec_of(state)).value);
}

void BM_Wyner(benchmark::State& state) {
  const auto p = dsbs(0.1);
  WynerOptions o;
  o.restarts = 16;
  for (auto _ : state) benchmark::DoNotOptimize(wyner(p, o, exec_of(state)).value);
}

void BM_SampleRegion(benchmark::State& state) {
  const auto p = dsbs(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_region(p, 2, 2000, 16, 7, exec_of(state)).size());
}

void BM_Membership(benchmark::State& state) {
  const auto p = dsbs(0.1);
  RegionOptions o;
  o.exec = exec_of(state);
  o.restarts = 16;
  const UncertaintyVector u{0.7, 0.3, 0.3, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(membership(p, u, o).verdict);
}

}  // namespace

// Argument 0 = serial, 1 = parallel.
BENCHMARK(BM_MaximizeChannel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Wyner)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleRegion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Membership)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

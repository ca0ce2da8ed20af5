#include <benchmark/benchmark.h>

#include "hulldev/deviation.hpp"

namespace {

using namespace hulldev;

void BM_DeviationLowerExtremalL1(benchmark::State& state) {
  const auto cfg = extremal_l1(static_cast<int>(state.range(0)));
  AscentOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(deviation_lower(cfg, 8, 0, opts).lower);
}
BENCHMARK(BM_DeviationLowerExtremalL1)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_DeviationLowerExtremalLinf(benchmark::State& state) {
  const auto cfg = extremal_linf(static_cast<int>(state.range(0)));
  AscentOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(deviation_lower(cfg, 8, 0, opts).lower);
}
BENCHMARK(BM_DeviationLowerExtremalLinf)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_DeviationOracle(benchmark::State& state) {
  const auto cfg = PointConfig::make({Vec::Unit(2, 0), Vec::Unit(2, 1), -Vec::Ones(2) / 2.0}, NormSpec::linf());
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(deviation_oracle(cfg, steps));
}
BENCHMARK(BM_DeviationOracle)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ExtremalSearch(benchmark::State& state) {
  SearchOptions opts;
  opts.budget = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(extremal_search(NormSpec::l1(), 3, 3, opts).report.lower);
}
BENCHMARK(BM_ExtremalSearch)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_XiEstimate(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(xi_estimate(NormSpec::linf(), dim, 20000, 0).value);
}
BENCHMARK(BM_XiEstimate)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "hulldev/inequalities.hpp"
#include "hulldev/random.hpp"

namespace {

using namespace hulldev;

WeightedFamily family(int k, int dim, Exponent p) {
  Rng rng = make_rng(7, static_cast<std::uint64_t>(k));
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) pts.push_back(gaussian_direction(rng, dim));
  return WeightedFamily::make(pts, dirichlet_flat(rng, k), p);
}

void BM_EnergyPairwise(benchmark::State& state) {
  const auto f = family(static_cast<int>(state.range(0)), 6, Exponent::finite(1.5));
  for (auto _ : state) benchmark::DoNotOptimize(energy_pairwise(f));
}
BENCHMARK(BM_EnergyPairwise)->Arg(8)->Arg(64);

void BM_CheckIneq4(benchmark::State& state) {
  const auto f = family(8, 6, Exponent::finite(3.0));
  const auto g = family(6, 6, Exponent::finite(3.0));
  for (auto _ : state) benchmark::DoNotOptimize(check_ineq4(f, g).margin);
}
BENCHMARK(BM_CheckIneq4);

void BM_Fuzz(benchmark::State& state) {
  FuzzOptions opts;
  opts.families = static_cast<int>(state.range(0));
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_inequalities(Exponent::finite(1.5), opts).checks);
}
BENCHMARK(BM_Fuzz)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "hulldev/hull.hpp"
#include "hulldev/random.hpp"
#include "hulldev/space.hpp"

namespace {

using namespace hulldev;

NormSpec norm_for(int code) {
  switch (code) {
    case 0: return NormSpec::l1();
    case 1: return NormSpec::l2();
    case 2: return NormSpec::linf();
    default: return NormSpec::lp(Exponent::finite(3.0));
  }
}

std::vector<Vec> random_points(int count, int dim, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) pts.push_back(gaussian_direction(rng, dim));
  return pts;
}

void BM_Norm(benchmark::State& state) {
  const auto spec = norm_for(static_cast<int>(state.range(0)));
  const auto x = random_points(1, static_cast<int>(state.range(1)), 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(norm_of(x, spec));
}
BENCHMARK(BM_Norm)->ArgsProduct({{0, 1, 2, 3}, {3, 32}});

void BM_NormingFunctional(benchmark::State& state) {
  const auto spec = norm_for(static_cast<int>(state.range(0)));
  const auto y = random_points(1, 8, 2).front();
  for (auto _ : state) benchmark::DoNotOptimize(norming_functional(y, spec));
}
BENCHMARK(BM_NormingFunctional)->DenseRange(0, 3);

void BM_DistToHull(benchmark::State& state) {
  const auto spec = norm_for(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  const auto pts = random_points(k, 4, 3);
  const Vec x = 2.0 * random_points(1, 4, 4).front();
  for (auto _ : state) benchmark::DoNotOptimize(dist_to_hull(x, pts, spec).distance);
}
BENCHMARK(BM_DistToHull)->ArgsProduct({{0, 1, 2, 3}, {4, 12}})->Unit(benchmark::kMicrosecond);

void BM_PolyhedralApprox(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(polyhedral_approx(NormSpec::l2(), 3, eps).functional_count);
}
BENCHMARK(BM_PolyhedralApprox)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

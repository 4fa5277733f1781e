#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "orlizono/body.hpp"
#include "orlizono/norm.hpp"
#include "orlizono/zonotope.hpp"

using namespace orlizono;

static void BM_OrliczNorm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<double> f(static_cast<std::size_t>(state.range(0)));
  for (auto& x : f) x = u(rng);
  const auto phi = make_phi(MixPhi{{{0.5, 1.0}, {0.5, 2.0}}});
  for (auto _ : state) benchmark::DoNotOptimize(orlicz_norm(f, phi));
}
BENCHMARK(BM_OrliczNorm)->Arg(3)->Arg(12)->Arg(64);

static void BM_Support(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OrliczZonotope z(random_multiset(n, n + 3, 2), OrliczFunction::power(2.0));
  const auto dirs = sphere_directions(n, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(z.support(dirs[i++ % dirs.size()]));
}
BENCHMARK(BM_Support)->Arg(2)->Arg(3);

static void BM_SupportPoint(benchmark::State& state) {
  const OrliczZonotope z(random_multiset(3, 6, 3), OrliczFunction::power(2.0));
  const auto dirs = sphere_directions(3, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(z.support_point(dirs[i++ % dirs.size()]));
}
BENCHMARK(BM_SupportPoint);

static void BM_BuildSandwich(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OrliczZonotope z(random_multiset(n, n + 2, 4), OrliczFunction::power(2.0));
  for (auto _ : state) benchmark::DoNotOptimize(volume_bounds(build_sandwich(z.oracle(), static_cast<int>(state.range(1)))));
}
BENCHMARK(BM_BuildSandwich)->Args({2, 1024})->Args({3, 512})->Args({3, 2048})->Unit(benchmark::kMillisecond);

static void BM_Santalo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OrliczZonotope z(random_multiset(n, n + 2, 5), OrliczFunction::power(2.0));
  const auto s = build_sandwich(z.oracle(), n == 2 ? 1024 : 512);
  for (auto _ : state) benchmark::DoNotOptimize(santalo_point(s));
}
BENCHMARK(BM_Santalo)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_L1Volume(benchmark::State& state) {
  const auto m = random_multiset(3, static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(l1_volume(m));
}
BENCHMARK(BM_L1Volume)->Arg(6)->Arg(12)->Arg(40);
BENCHMARK_MAIN();

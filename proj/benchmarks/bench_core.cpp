#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rcohull/rcohull.hpp"

using namespace rcohull;

namespace {

KSet random_kset(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(0.2, 3.0), ud(0.0, 4.0);
  std::vector<KPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = ua(rng);
    pts.push_back({a, a + ud(rng)});
  }
  return KSet::validate(pts);
}

}  // namespace

static void BM_SingularValues(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<Mat2> ms;
  for (int i = 0; i < 1024; ++i) ms.emplace_back(u(rng), u(rng), u(rng), u(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(ms[i++ & 1023]));
}
BENCHMARK(BM_SingularValues);

static void BM_Envelope(benchmark::State& state) {
  const KSet k = random_kset(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(m_envelope(k));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Envelope)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oNLogN);

static void BM_Sigma(benchmark::State& state) {
  const KSet k = random_kset(static_cast<std::size_t>(state.range(0)), 3);
  const PLConvex env = m_envelope(k);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma(env, x));
    x = x > 10.0 ? 0.0 : x + 0.01;
  }
}
BENCHMARK(BM_Sigma)->Arg(3)->Arg(50)->Arg(1000);

static void BM_Classify(benchmark::State& state) {
  const Hull h(random_kset(static_cast<std::size_t>(state.range(0)), 4));
  Rng rng(5);
  std::vector<Mat2> ms;
  for (int i = 0; i < 1024; ++i) ms.push_back(random_with_sv({0.5, 1.5}, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify(ms[i++ & 1023], h));
}
BENCHMARK(BM_Classify)->Arg(3)->Arg(50);

static void BM_Decompose(benchmark::State& state) {
  const Hull h(random_kset(static_cast<std::size_t>(state.range(0)), 6));
  Rng rng(7);
  std::vector<Mat2> ms;
  for (int i = 0; i < 64; ++i) ms.push_back(sample_in_hull(h, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(ms[i++ & 63], h));
}
BENCHMARK(BM_Decompose)->Arg(1)->Arg(2)->Arg(5);

static void BM_Verify(benchmark::State& state) {
  const Hull h(random_kset(5, 8));
  Rng rng(9);
  const Mat2 xi = sample_in_hull(h, rng);
  const LaminateTree t = decompose(xi, h);
  for (auto _ : state) benchmark::DoNotOptimize(verify(t, xi, h.kset()));
}
BENCHMARK(BM_Verify);

BENCHMARK_MAIN();

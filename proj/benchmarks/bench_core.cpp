#include <benchmark/benchmark.h>

#include <random>

#include "faber/dyadic.hpp"
#include "faber/measure.hpp"
#include "faber/series.hpp"
#include "faber/testbed.hpp"

namespace {

using namespace faber;

void BM_NodeSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(node_set(n, d).count);
  state.counters["m"] = static_cast<double>(node_count(n, d));
}
BENCHMARK(BM_NodeSet)->Args({10, 2})->Args({8, 3})->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const auto f = smooth("exp", d).handle;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(f, n).size());
  state.counters["m"] = static_cast<double>(node_count(n, d));
}
BENCHMARK(BM_Analyze)->Args({12, 1})->Args({10, 2})->Args({7, 3})->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const auto s = analyze(smooth("exp", d).handle, n);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(d));
  for (auto _ : state) {
    for (double& v : x) v = unit(rng);
    benchmark::DoNotOptimize(evaluate(s, x));
  }
  state.counters["levels"] = static_cast<double>(s.level_count());
}
BENCHMARK(BM_Evaluate)->Args({10, 1})->Args({10, 2})->Args({8, 3});

void BM_LqNormComposite(benchmark::State& state) {
  const auto g = smooth("poly-mix", 2).handle;
  const MeasureSpec spec{2.0, CompositeGauss{kDefaultGaussOrder, static_cast<int>(state.range(0))}};
  for (auto _ : state) benchmark::DoNotOptimize(lq_norm(g, spec).value);
}
BENCHMARK(BM_LqNormComposite)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_LqNormMonteCarlo(benchmark::State& state) {
  const auto g = smooth("poly-mix", 3).handle;
  const MeasureSpec spec{2.0, StratifiedMc{static_cast<std::size_t>(state.range(0)), 0}};
  for (auto _ : state) benchmark::DoNotOptimize(lq_norm(g, spec).value);
}
BENCHMARK(BM_LqNormMonteCarlo)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Serial reference paths against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "circle_colim/diffeo.hpp"
#include "circle_colim/fixtures.hpp"
#include "circle_colim/loops.hpp"

using namespace circle_colim;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ComposeDiffeo(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = fixtures::random_diffeo(4096, 0.09, rng), b = fixtures::random_diffeo(4096, 0.09, rng);
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b, exec_of(state)));
  label(state);
}

void BM_InvertDiffeo(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = fixtures::random_diffeo(4096, 0.09, rng);
  for (auto _ : state) benchmark::DoNotOptimize(invert(a, exec_of(state)));
  label(state);
}

void BM_FactorDiffeo(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto phi = fixtures::random_diffeo(4096, 0.09, rng);
  const Cover cover = uniform_cover(5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(factor_over_cover(phi, cover, exec_of(state)));
  label(state);
}

void BM_FactorLoop(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Loop gamma = fixtures::random_chart_loop(GroupDescriptor{3}, 2048, 2.5, rng);
  const Cover cover = uniform_cover(5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(factor_over_cover(gamma, cover, exec_of(state)));
  label(state);
}

void BM_LogChart(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const Loop gamma = fixtures::random_chart_loop(GroupDescriptor{3}, 2048, 2.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(log_chart(gamma, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_ComposeDiffeo)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InvertDiffeo)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FactorDiffeo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FactorLoop)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LogChart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "deltasieve/density.hpp"
#include "deltasieve/expsum.hpp"
#include "deltasieve/oscint.hpp"
#include "deltasieve/sieve.hpp"

using namespace deltasieve;

static void BM_RawPhaseSum(benchmark::State& state) {
  const i64 q = state.range(0);
  const auto p = expsum::PhasePolynomial::cubic(3, 5, 7, q);
  for (auto _ : state) benchmark::DoNotOptimize(expsum::raw_phase_sum(p));
  state.SetItemsProcessed(state.iterations() * q);
}
BENCHMARK(BM_RawPhaseSum)->Arg(1000)->Arg(100000)->Arg(1000000);

static void BM_MarkStripe(benchmark::State& state) {
  const double X = static_cast<double>(state.range(0));
  const i64 B_max = static_cast<i64>(std::pow(X, 6));
  const i64 A = -static_cast<i64>(std::pow(X, 4)) / 3;
  for (auto _ : state) benchmark::DoNotOptimize(sieve::mark_stripe(A, B_max));
  state.SetItemsProcessed(state.iterations() * (2 * B_max + 1));
}
BENCHMARK(BM_MarkStripe)->Arg(4)->Arg(6)->Arg(8);

static void BM_ExactCount(benchmark::State& state) {
  sieve::CountConfig cfg;
  cfg.X = static_cast<double>(state.range(0));
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sieve::exact_count(cfg).count);
}
BENCHMARK(BM_ExactCount)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Sigma(benchmark::State& state) {
  const i64 q = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(density::sigma(q).sigma);
}
BENCHMARK(BM_Sigma)->Arg(1000)->Arg(9973)->Arg(499 * 499);

static void BM_IEval(benchmark::State& state) {
  const oscint::OscillatoryProblem p{-static_cast<double>(state.range(0)), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(oscint::I_eval(p));
}
BENCHMARK(BM_IEval)->Arg(1)->Arg(20)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_EulerProduct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(density::euler_product(2, state.range(0)).lo);
}
BENCHMARK(BM_EulerProduct)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

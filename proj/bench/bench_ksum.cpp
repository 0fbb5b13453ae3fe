#include <benchmark/benchmark.h>
#include <omp.h>

#include "mczeta/funceq.hpp"
#include "mczeta/mchf.hpp"

using namespace mczeta;

namespace {

const ArgPoint kR2({-0.5, 2.7});
const ArgPoint kR3({-2.2, 2.5, 1.5});

// threads = 1 is the serial reference driver; 0 uses every OpenMP worker.
void BM_FSum(benchmark::State& state, const ArgPoint& p) {
  EvalBudget b;
  b.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f_pm(1, p, b).value);
  state.counters["workers"] = b.threads == 0 ? omp_get_max_threads() : b.threads;
}

void BM_MainTheorem(benchmark::State& state) {
  EvalBudget b;
  b.threads = static_cast<int>(state.range(0));
  const ArgPoint& p = state.range(1) == 2 ? kR2 : kR3;
  for (auto _ : state) benchmark::DoNotOptimize(verify_main_theorem(p, 1e-6, b).rel_residual);
}

void BM_PsiReduced(benchmark::State& state) {
  const Complex two_pi_i{0.0, 2.0 * kPi};
  MchfArgs args{{-0.7, 1.1, 0.9, 1.4}, {two_pi_i * 4.0, two_pi_i * 8.0, two_pi_i * 12.0}, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(mchf_psi_reduced(args).value);
}

}  // namespace

BENCHMARK_CAPTURE(BM_FSum, r2, kR2)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FSum, r3, kR3)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MainTheorem)->Args({1, 2})->Args({0, 2})->Args({1, 3})->Args({0, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsiReduced)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

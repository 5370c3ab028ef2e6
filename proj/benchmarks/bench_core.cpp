#include <benchmark/benchmark.h>

#include "swp/bandit.hpp"
#include "swp/continuous_greedy.hpp"
#include "swp/exact_oracles.hpp"
#include "swp/harness.hpp"
#include "swp/multilinear.hpp"

namespace {

using namespace swp;

Instance coverage_instance(int m, int n) {
  Rng rng(42);
  return random_instance(m, n, ValuationKind::kCoverage, rng);
}

void BM_Evaluate(benchmark::State& state) {
  const Instance inst = coverage_instance(1, static_cast<int>(state.range(0)));
  const Valuation& v = inst.valuation(0);
  std::uint64_t s = 0;
  const std::uint64_t mask = ItemSet::full(inst.items()).bits();
  for (auto _ : state) {
    benchmark::DoNotOptimize(v.evaluate(ItemSet(s & mask)));
    s += 0x9e3779b97f4a7c15ULL;
  }
}
BENCHMARK(BM_Evaluate)->Arg(8)->Arg(32)->Arg(64);

void BM_EstimateMarginal(benchmark::State& state) {
  const Instance inst = coverage_instance(3, 8);
  FractionalPoint y(3, 8);
  for (int j = 0; j < 8; ++j) y.set(j % 3, j, 0.5);
  Rng rng(1);
  const int z = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_marginal(y, 1, 2, inst, z, rng).mean);
  }
  state.SetItemsProcessed(state.iterations() * z);
}
BENCHMARK(BM_EstimateMarginal)->Arg(64)->Arg(1536);

void BM_BruteForceOpt(benchmark::State& state) {
  const Instance inst = coverage_instance(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(inst).value);
}
BENCHMARK(BM_BruteForceOpt)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = coverage_instance(2, n);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, CGConfig{}, ++seed).welfare);
}
BENCHMARK(BM_Solve)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_RunEtc(benchmark::State& state) {
  const Environment env(auction_instance(2, 4, 3), 0.1);
  EtcConfig cfg;
  cfg.horizon = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_etc(env, cfg, 0.58, ++seed).exploitation_gap);
  }
}
BENCHMARK(BM_RunEtc)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

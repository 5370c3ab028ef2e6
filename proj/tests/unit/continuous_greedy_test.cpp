#include "swp/continuous_greedy.hpp"

#include <gtest/gtest.h>

#include "swp/errors.hpp"
#include "swp/exact_oracles.hpp"

namespace swp {
namespace {

CGConfig small_config(double lambda = 1.0 / 8.0, int samples = 64) {
  CGConfig cfg;
  cfg.lambda = lambda;
  cfg.samples = samples;
  return cfg;
}

TEST(CGConfigTest, StepsRequireUnitFraction) {
  EXPECT_EQ(small_config(1.0 / 16.0).steps(), 16);
  EXPECT_EQ(small_config(1.0).steps(), 1);
  EXPECT_THROW(small_config(0.3).steps(), ConfigError);
  EXPECT_THROW(small_config(0.0).steps(), ConfigError);
  EXPECT_THROW(small_config(1.5).steps(), ConfigError);
  CGConfig bad = small_config();
  bad.roundings = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(CGConfigTest, DefaultAndCanonicalSamples) {
  Rng rng(1);
  const Instance inst = random_instance(2, 3, ValuationKind::kModular, rng);
  EXPECT_EQ(CGConfig{}.resolved_samples(inst), 64 * 6);
  const CGConfig canon = CGConfig::canonical(2, 3);
  EXPECT_DOUBLE_EQ(canon.lambda, 1.0 / 36.0);
  EXPECT_EQ(canon.samples, 7776);
}

TEST(RunFractionalTest, SingleAgentSingleItem) {
  const Instance inst(1, 1, {Valuation(1, ModularParams{{0.4}})});
  ExactValueOracle oracle(inst);
  const FractionalPoint y = run_fractional(inst, small_config(), oracle, 1);
  EXPECT_NEAR(y(0, 0), 1.0, 1e-12);
}

TEST(RunFractionalTest, AllMassToDominantAgent) {
  const Instance inst(2, 1, {Valuation(1, ModularParams{{0.9}}),
                             Valuation(1, ModularParams{{0.1}})});
  ExactValueOracle oracle(inst);
  const FractionalPoint y = run_fractional(inst, small_config(), oracle, 2);
  EXPECT_NEAR(y(0, 0), 1.0, 1e-12);
  EXPECT_EQ(y(1, 0), 0.0);
}

TEST(RunFractionalTest, TiesGoToLowestAgent) {
  const Valuation v(2, ModularParams{{0.2, 0.2}});
  const Instance inst(2, 2, {v, v});
  ExactValueOracle oracle(inst);
  // Only the first round is a tie; afterwards agent 1 has the larger gain.
  run_fractional(inst, small_config(0.25), oracle, 3,
                 [](int step, const FractionalPoint& y) {
                   if (step != 1) return;
                   EXPECT_EQ(y.row_sum(0), 0.5);
                   EXPECT_EQ(y.row_sum(1), 0.0);
                 });
}

// Property: after step k every column sum is at most k * lambda.
TEST(RunFractionalTest, StaysInScaledPolytope) {
  Rng rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 1 + trial % 5;
    const int n = 1 + (trial * 3) % 5;
    const Instance inst = random_instance(
        m, n, trial % 2 ? ValuationKind::kCoverage : ValuationKind::kBudgetAdditive,
        rng);
    ExactValueOracle oracle(inst);
    const CGConfig cfg = small_config(0.25, 16);
    const FractionalPoint y =
        run_fractional(inst, cfg, oracle, trial, [&](int step, const FractionalPoint& p) {
          EXPECT_LE(p.max_column_sum(), step * cfg.lambda + kPolytopeTol);
        });
    EXPECT_TRUE(y.in_polytope());
  }
}

TEST(RunFractionalTest, OracleCallsMatchClosedForm) {
  Rng rng(5);
  const Instance inst = random_instance(3, 4, ValuationKind::kCoverage, rng);
  CGConfig cfg = small_config(1.0 / 8.0, 10);
  cfg.record_queries = true;
  const CGResult r = solve(inst, cfg, 9);
  EXPECT_EQ(r.oracle_calls, 2u * 10 * 3 * 4 * 8);
  EXPECT_GT(r.eta_measured, 0u);
  EXPECT_EQ(r.eta_measured, r.queried_actions.size());
}

TEST(RunFractionalTest, BindingQuotasLimitPerRoundPicks) {
  const Valuation v(4, ModularParams{{0.1, 0.2, 0.05, 0.15}});
  const Valuation u(4, ModularParams{{0.01, 0.01, 0.01, 0.01}});
  const Instance inst(2, 4, {v, u}, {2, 4});
  ExactValueOracle oracle(inst);
  const FractionalPoint y = run_fractional(inst, small_config(0.25), oracle, 6);
  // Agent 0 wins every item but keeps only its two best picks per round.
  EXPECT_NEAR(y.row_sum(0), 2.0, 1e-12);
  EXPECT_TRUE(y.in_polytope());
}

TEST(RoundingTest, IntegralPointIsDeterministic) {
  Rng rng(7);
  const Instance inst = random_instance(2, 4, ValuationKind::kCoverage, rng);
  const Allocation a(std::vector<int>{1, -1, 0, 1});
  const auto y = FractionalPoint::from_allocation(a, 2);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(round_to_allocation(y, inst, rng), a);
  EXPECT_EQ(round_to_allocation(FractionalPoint(2, 4), inst, rng), Allocation(4));
}

TEST(RoundingTest, CategoricalFrequencies) {
  Rng rng(8);
  const Instance inst = random_instance(2, 2, ValuationKind::kModular, rng);
  FractionalPoint y(2, 2);
  y.set(0, 0, 0.5);
  y.set(1, 0, 0.5);
  y.set(0, 1, 0.2);
  y.set(1, 1, 0.3);
  int c00 = 0, c01 = 0, c11 = 0, none1 = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const Allocation a = round_to_allocation(y, inst, rng);
    c00 += a.owner(0) == 0;
    c01 += a.owner(0) == 1;
    c11 += a.owner(1) == 1;
    none1 += a.owner(1) == kUnassigned;
  }
  EXPECT_EQ(c00 + c01, draws);
  EXPECT_NEAR(c00 / double(draws), 0.5, 0.02);
  EXPECT_NEAR(c11 / double(draws), 0.3, 0.02);
  EXPECT_NEAR(none1 / double(draws), 0.5, 0.02);
}

TEST(RoundingTest, QuotaEvictionKeepsFeasibility) {
  Rng rng(9);
  const Instance base = random_instance(2, 5, ValuationKind::kBudgetAdditive, rng);
  const Instance inst(2, 5, base.valuations(), {2, 2});
  FractionalPoint y(2, 5);
  for (int j = 0; j < 5; ++j) y.set(0, j, 0.8);
  for (int j = 0; j < 5; ++j) y.set(1, j, 0.2);
  for (int k = 0; k < 200; ++k) {
    const Allocation a = round_to_allocation(y, inst, rng);
    ASSERT_TRUE(is_feasible(a, inst));
  }
}

// The estimated marginal is w_ij (1 - y_ij), so mass stays on the best agent
// only while every rival weight is below lambda times the best one.
TEST(SolveTest, ModularWithDominantWeightsMatchesOpt) {
  const Instance inst(2, 3, {Valuation(3, ModularParams{{0.3, 0.01, 0.3}}),
                             Valuation(3, ModularParams{{0.02, 0.3, 0.01}})});
  const CGResult r = solve(inst, small_config(1.0 / 8.0), 4);
  EXPECT_EQ(r.y_final, FractionalPoint::from_allocation(r.allocation, 2));
  EXPECT_EQ(r.allocation.assignment(), (std::vector<int>{0, 1, 0}));
  EXPECT_NEAR(r.welfare, brute_force_opt(inst).value, 1e-12);
}

TEST(SolveTest, CoverageApproximation) {
  Rng rng(11);
  const Instance inst = random_instance(2, 3, ValuationKind::kCoverage, rng);
  const double opt = brute_force_opt(inst).value;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CGResult r = solve(inst, small_config(), seed);
    EXPECT_TRUE(is_feasible(r.allocation, inst));
    EXPECT_GE(r.welfare, (1 - 1 / std::exp(1.0)) * opt - 0.05);
    EXPECT_DOUBLE_EQ(r.welfare, welfare(r.allocation, inst));
  }
}

TEST(SolveTest, NoisyModeStaysFeasibleAndNonnegative) {
  Rng rng(12);
  const Instance inst = random_instance(3, 4, ValuationKind::kCoverage, rng);
  CGConfig cfg = small_config();
  cfg.oracle_mode = OracleMode::kNoisy;
  cfg.noise_epsilon = 0.02;
  const CGResult r = solve(inst, cfg, 3);
  EXPECT_TRUE(is_feasible(r.allocation, inst));
  EXPECT_GE(r.welfare, 0.0);
}

TEST(SolveTest, DeterministicAcrossThreadCounts) {
  Rng rng(13);
  const Instance inst = random_instance(3, 4, ValuationKind::kCoverage, rng);
  CGConfig cfg = small_config();
  const CGResult a = solve(inst, cfg, 21);
  cfg.threads = 3;
  const CGResult b = solve(inst, cfg, 21);
  EXPECT_EQ(a.y_final, b.y_final);
  EXPECT_EQ(a.allocation, b.allocation);
  EXPECT_EQ(a.F_estimate, b.F_estimate);
}

TEST(SolveTest, OracleMustMatchInstance) {
  Rng rng(14);
  const Instance inst = random_instance(2, 3, ValuationKind::kModular, rng);
  const Instance other = inst;
  ExactValueOracle oracle(other);
  EXPECT_THROW(solve(inst, small_config(), oracle, 1), InvalidInput);
}

}  // namespace
}  // namespace swp

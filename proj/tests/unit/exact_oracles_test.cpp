#include "swp/exact_oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "swp/continuous_greedy.hpp"
#include "swp/errors.hpp"

namespace swp {
namespace {

TEST(BruteForceTest, SingleAgentTakesEverything) {
  const Instance inst(1, 2, {Valuation(2, MatroidRankParams{2}, 0.5)});
  const OptCertificate c = brute_force_opt(inst);
  EXPECT_EQ(c.allocation.assignment(), (std::vector<int>{0, 0}));
  EXPECT_DOUBLE_EQ(c.value, 1.0);
  EXPECT_EQ(c.search_space, 4u);
}

TEST(BruteForceTest, ModularIsItemwiseMax) {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(3, 5, ValuationKind::kModular, rng);
    double expected = 0.0;
    for (int j = 0; j < 5; ++j) {
      double best = 0.0;
      for (int i = 0; i < 3; ++i) {
        best = std::max(best, std::get<ModularParams>(inst.valuation(i).params()).weights[j]);
      }
      expected += best;
    }
    EXPECT_NEAR(brute_force_opt(inst).value, expected, 1e-15);
  }
}

TEST(BruteForceTest, RespectsQuotas) {
  const Valuation v(2, ModularParams{{0.3, 0.3}});
  const Valuation u(2, ModularParams{{0.1, 0.1}});
  const Instance inst(2, 2, {v, u}, {1, 1});
  const OptCertificate c = brute_force_opt(inst);
  EXPECT_TRUE(is_feasible(c.allocation, inst));
  EXPECT_DOUBLE_EQ(c.value, 0.4);
  // Ties broken lexicographically: (0, 1) before (1, 0).
  EXPECT_EQ(c.allocation.assignment(), (std::vector<int>{0, 1}));
}

TEST(BruteForceTest, TiesPreferUnassigned) {
  const Valuation zero(2, MatroidRankParams{0});
  const Instance inst(2, 2, {zero, zero});
  EXPECT_EQ(brute_force_opt(inst).allocation, Allocation(2));
}

TEST(BruteForceTest, SizeGuard) {
  Rng rng(2);
  const Instance inst = random_instance(9, 8, ValuationKind::kModular, rng);
  EXPECT_THROW(brute_force_opt(inst), SizeError);
}

TEST(BruteForceTest, ThreadCountDoesNotChangeResult) {
  Rng rng(3);
  const Instance inst = random_instance(3, 6, ValuationKind::kCoverage, rng);
  const OptCertificate a = brute_force_opt(inst, 1);
  const OptCertificate b = brute_force_opt(inst, 4);
  EXPECT_EQ(a.allocation, b.allocation);
  EXPECT_EQ(a.value, b.value);
  EXPECT_DOUBLE_EQ(a.value, welfare(a.allocation, inst));
}

TEST(GreedyTest, ExactOnModular) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(2 + trial % 3, 5, ValuationKind::kModular, rng);
    EXPECT_NEAR(welfare(greedy_half(inst), inst), brute_force_opt(inst).value, 1e-15);
  }
}

TEST(GreedyTest, ZeroValuationsGiveEmptyAllocation) {
  const Valuation zero(3, ModularParams{{0.0, 0.0, 0.0}});
  const Instance inst(2, 3, {zero, zero});
  EXPECT_EQ(greedy_half(inst), Allocation(3));
}

TEST(GreedyTest, RespectsQuotas) {
  Rng rng(5);
  const Instance base = random_instance(2, 5, ValuationKind::kCoverage, rng);
  const Instance inst(2, 5, base.valuations(), {1, 2});
  EXPECT_TRUE(is_feasible(greedy_half(inst), inst));
}

// Property: OPT dominates greedy and continuous greedy; greedy is within 1/2.
TEST(DominanceTest, OptIsMaximal) {
  Rng rng(6);
  const ValuationKind kinds[] = {ValuationKind::kCoverage,
                                 ValuationKind::kBudgetAdditive,
                                 ValuationKind::kMatroidRankScaled};
  CGConfig cfg;
  cfg.lambda = 1.0 / 8.0;
  cfg.samples = 32;
  for (int trial = 0; trial < 24; ++trial) {
    const Instance inst =
        random_instance(1 + trial % 3, 2 + trial % 4, kinds[trial % 3], rng);
    const double opt = brute_force_opt(inst).value;
    const double greedy = welfare(greedy_half(inst), inst);
    const double cg = solve(inst, cfg, trial).welfare;
    EXPECT_LE(greedy, opt + 1e-12);
    EXPECT_LE(cg, opt + 1e-12);
    EXPECT_GE(greedy, 0.5 * opt - 1e-12);
  }
}

}  // namespace
}  // namespace swp

#include "swp/valuations.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "swp/errors.hpp"

namespace swp {
namespace {

constexpr ValuationKind kAllKinds[] = {
    ValuationKind::kModular, ValuationKind::kCoverage,
    ValuationKind::kBudgetAdditive, ValuationKind::kMatroidRankScaled};

TEST(ItemSetTest, BasicMembership) {
  ItemSet s{0, 2, 5};
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.with(1).size(), 4);
  EXPECT_EQ(s.without(0), (ItemSet{2, 5}));
  EXPECT_TRUE((ItemSet{2}).subset_of(s));
  EXPECT_EQ(s.items(), (std::vector<int>{0, 2, 5}));
  EXPECT_EQ(s.to_string(), "{0,2,5}");
  EXPECT_EQ(ItemSet::full(64).size(), 64);
}

TEST(EvaluateTest, ModularSumsWeights) {
  Valuation v(3, ModularParams{{0.2, 0.3, 0.1}});
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{0, 2}), 0.3);
  EXPECT_EQ(v.kind(), ValuationKind::kModular);
}

TEST(EvaluateTest, EmptyBundleIsZeroForEveryKind) {
  Rng rng(5);
  for (auto kind : kAllKinds) {
    const Instance inst = random_instance(2, 5, kind, rng);
    for (const auto& v : inst.valuations()) {
      EXPECT_EQ(evaluate(v, ItemSet{}), 0.0) << to_string(kind);
    }
  }
}

TEST(EvaluateTest, CoverageCountsCoveredElements) {
  // Items cover {a,b}, {b,c}, {c}; universe {a,b,c} = bits 0..2.
  Valuation v(3, CoverageParams{{0b011, 0b110, 0b100}, 3}, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{2}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{1, 2}), 2.0 / 3.0);
}

TEST(EvaluateTest, BudgetAdditiveCaps) {
  Valuation v(3, BudgetAdditiveParams{{0.5, 0.4, 0.3}, 0.6});
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{0}), 0.5);
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{0, 1}), 0.6);
}

TEST(EvaluateTest, MatroidRankScaled) {
  Valuation v(4, MatroidRankParams{2}, 0.25);
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{1}), 0.25);
  EXPECT_DOUBLE_EQ(evaluate(v, ItemSet{0, 1, 3}), 0.5);
}

TEST(EvaluateTest, OutOfRangeItemIsInvalidInput) {
  Valuation v(3, ModularParams{{0.1, 0.1, 0.1}});
  EXPECT_THROW(evaluate(v, ItemSet{3}), InvalidInput);
}

TEST(ValuationTest, ConstructionRejectsBadParameters) {
  EXPECT_THROW(Valuation(2, ModularParams{{0.1}}), InvalidInput);
  EXPECT_THROW(Valuation(2, ModularParams{{0.1, -0.1}}), InvalidInput);
  EXPECT_THROW(Valuation(2, ModularParams{{0.7, 0.7}}), InvalidInput);  // > 1
  EXPECT_THROW(Valuation(2, MatroidRankParams{3}), InvalidInput);
  EXPECT_THROW(Valuation(2, CoverageParams{{0b1000, 1}, 3}), InvalidInput);
  EXPECT_THROW(Valuation(2, ModularParams{{0.1, 0.1}}, 0.0), InvalidInput);
  EXPECT_THROW(parse_valuation_kind("xor"), InvalidInput);
}

TEST(PropertyCheckTest, AcceptsCoverage) {
  Valuation v(3, CoverageParams{{0b011, 0b110, 0b100}, 3}, 1.0 / 3.0);
  const PropertyReport r = check_properties(v);
  EXPECT_TRUE(r.ok()) << r.first_violation;
}

TEST(PropertyCheckTest, FlagsEachViolation) {
  // |S|^2 / 16 is supermodular.
  auto square = [](ItemSet s) { return s.size() * s.size() / 16.0; };
  PropertyReport r = check_properties(4, square);
  EXPECT_FALSE(r.submodular);
  EXPECT_TRUE(r.monotone);
  EXPECT_FALSE(r.first_violation.empty());

  r = check_properties(3, [](ItemSet s) { return s.contains(0) ? 0.0 : 0.5; });
  EXPECT_FALSE(r.normalized);
  EXPECT_FALSE(r.monotone);

  r = check_properties(2, [](ItemSet s) { return 0.8 * s.size(); });
  EXPECT_FALSE(r.in_range);
  EXPECT_THROW(check_properties(21, square), SizeError);
}

TEST(RandomInstanceTest, SingleModularItem) {
  Rng rng(1);
  const Instance inst = random_instance(1, 1, ValuationKind::kModular, rng);
  const auto& w = std::get<ModularParams>(inst.valuation(0).params()).weights;
  ASSERT_EQ(w.size(), 1u);
  EXPECT_GE(w[0], 0.0);
  EXPECT_LE(w[0], 1.0);
  EXPECT_DOUBLE_EQ(evaluate(inst.valuation(0), ItemSet{0}), w[0]);
}

TEST(RandomInstanceTest, CoverageIsSubmodularOnAllTriples) {
  Rng rng(2);
  const Instance inst = random_instance(2, 4, ValuationKind::kCoverage, rng);
  // Direct (A, B, j) enumeration, independent of check_properties' local form.
  for (const auto& v : inst.valuations()) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      for (std::uint64_t a = b;; a = (a - 1) & b) {
        for (int j = 0; j < 4; ++j) {
          if ((b >> j) & 1U) continue;
          const double ga = evaluate(v, ItemSet(a).with(j)) - evaluate(v, ItemSet(a));
          const double gb = evaluate(v, ItemSet(b).with(j)) - evaluate(v, ItemSet(b));
          EXPECT_GE(ga + 1e-12, gb);
        }
        if (a == 0) break;
      }
    }
  }
}

TEST(RandomInstanceTest, BudgetAdditiveMonotoneOnAllChains) {
  Rng rng(3);
  const Instance inst = random_instance(3, 3, ValuationKind::kBudgetAdditive, rng);
  for (const auto& v : inst.valuations()) {
    for (std::uint64_t s = 0; s < 8; ++s) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_LE(evaluate(v, ItemSet(s)), evaluate(v, ItemSet(s).with(j)) + 1e-15);
      }
    }
  }
}

TEST(RandomInstanceTest, RejectsBadSizesAndKinds) {
  Rng rng(4);
  EXPECT_THROW(random_instance(0, 3, ValuationKind::kModular, rng), InvalidInput);
  EXPECT_THROW(random_instance(2, 0, ValuationKind::kModular, rng), InvalidInput);
  EXPECT_THROW(random_instance(2, 3, static_cast<ValuationKind>(9), rng), InvalidInput);
}

// Property: every generated valuation (N <= 10) passes the exhaustive check,
// and the welfare of the grand bundles sums to at most 1.
TEST(RandomInstanceTest, GeneratedValuationsAreSound) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto kind = kAllKinds[trial % 4];
    const int m = 1 + trial % 3;
    const int n = 1 + trial % 10;
    const Instance inst = random_instance(m, n, kind, rng);
    double grand = 0.0;
    for (const auto& v : inst.valuations()) {
      const PropertyReport r = check_properties(v);
      EXPECT_TRUE(r.ok()) << to_string(kind) << ": " << r.first_violation;
      grand += evaluate(v, ItemSet::full(n));
    }
    EXPECT_LE(grand, 1.0 + 1e-12);
  }
}

TEST(InstanceTest, DefaultsAndValidation) {
  Valuation v(2, ModularParams{{0.1, 0.2}});
  Instance inst(1, 2, {v});
  EXPECT_EQ(inst.quota(0), 2);
  EXPECT_FALSE(inst.has_binding_quotas());
  EXPECT_TRUE(Instance(1, 2, {v}, {1}).has_binding_quotas());
  EXPECT_THROW(Instance(2, 2, {v}), InvalidInput);
  EXPECT_THROW(Instance(1, 2, {v}, {3}), InvalidInput);
  EXPECT_THROW(Instance(1, 3, {v}), InvalidInput);
}

TEST(NoisyOracleTest, ZeroNoiseIsExact) {
  Valuation v(3, ModularParams{{0.2, 0.3, 0.1}});
  NoisyOracle o(v, AdditiveUniform{0.0});
  Rng rng(7);
  EXPECT_EQ(noisy_evaluate(o, ItemSet{0, 2}, rng), evaluate(v, ItemSet{0, 2}));
  NoisyOracle g(v, TruncatedGaussian{0.0, 0.0});
  EXPECT_EQ(noisy_evaluate(g, ItemSet{1}, rng), evaluate(v, ItemSet{1}));
}

TEST(NoisyOracleTest, UniformNoiseStaysWithinEpsilon) {
  Valuation v(3, ModularParams{{0.2, 0.3, 0.1}});
  NoisyOracle o(v, AdditiveUniform{0.05});
  EXPECT_DOUBLE_EQ(o.epsilon(), 0.05);
  Rng rng(8);
  const double truth = evaluate(v, ItemSet{0, 1});
  for (int k = 0; k < 10000; ++k) {
    const double q = noisy_evaluate(o, ItemSet{0, 1}, rng);
    ASSERT_LE(std::abs(q - truth), 0.05);
    ASSERT_GE(q, 0.0);
    ASSERT_LE(q, 1.0);
  }
}

TEST(NoisyOracleTest, TruncatedGaussianMeanAndBound) {
  Valuation v(3, ModularParams{{0.2, 0.3, 0.1}});
  NoisyOracle o(v, TruncatedGaussian{0.02, 0.05});
  Rng rng(9);
  const double truth = evaluate(v, ItemSet{0, 1});
  double sum = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double q = noisy_evaluate(o, ItemSet{0, 1}, rng);
    ASSERT_LE(std::abs(q - truth), 0.05);
    sum += q;
  }
  EXPECT_NEAR(sum / 10000, truth, 0.005);
}

TEST(NoisyOracleTest, ClipsToUnitInterval) {
  Valuation v(1, ModularParams{{0.0}});
  NoisyOracle o(v, AdditiveUniform{0.3});
  Rng rng(10);
  for (int k = 0; k < 1000; ++k) {
    const double q = noisy_evaluate(o, ItemSet{0}, rng);
    ASSERT_GE(q, 0.0);
    ASSERT_LE(q, 0.3);
  }
}

TEST(NoisyOracleTest, SameSeedSameSequence) {
  Valuation v(3, ModularParams{{0.2, 0.3, 0.1}});
  NoisyOracle o(v, TruncatedGaussian{0.05, 0.1});
  Rng a(77), b(77);
  for (int k = 0; k < 100; ++k) {
    ASSERT_EQ(noisy_evaluate(o, ItemSet{1, 2}, a), noisy_evaluate(o, ItemSet{1, 2}, b));
  }
}

TEST(NoisyOracleTest, RejectsNegativeNoise) {
  Valuation v(1, ModularParams{{0.5}});
  EXPECT_THROW(NoisyOracle(v, AdditiveUniform{-0.1}), InvalidInput);
}

}  // namespace
}  // namespace swp

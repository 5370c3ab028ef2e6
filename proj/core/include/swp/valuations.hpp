#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swp/item_set.hpp"
#include "swp/random.hpp"

namespace swp {

enum class ValuationKind { kModular, kCoverage, kBudgetAdditive, kMatroidRankScaled };

std::string_view to_string(ValuationKind kind);
// Throws InvalidInput for unknown names.
ValuationKind parse_valuation_kind(std::string_view name);

// Raw (unscaled) parameter blocks, one per family.

// raw(S) = sum of weights[j] over j in S.
struct ModularParams {
  std::vector<double> weights;
};

// raw(S) = number of universe elements covered by the items in S.
// covers[j] is the bitmask of universe elements item j covers.
struct CoverageParams {
  std::vector<std::uint64_t> covers;
  int universe_size = 0;
};

// raw(S) = min(cap, sum of weights[j] over j in S).
struct BudgetAdditiveParams {
  std::vector<double> weights;
  double cap = 0.0;
};

// raw(S) = min(|S|, rank), the rank function of a uniform matroid.
struct MatroidRankParams {
  int rank = 0;
};

using ValuationParams = std::variant<ModularParams, CoverageParams,
                                     BudgetAdditiveParams, MatroidRankParams>;

// A normalized monotone submodular set function w : 2^[N] -> [0, 1] with
// w(S) = scale * raw(S). Construction validates the parameters and that
// scale * raw(full set) <= 1, which bounds the whole range by monotonicity.
class Valuation {
 public:
  Valuation(int item_count, ValuationParams params, double scale = 1.0);

  // Throws InvalidInput when `bundle` has an item outside [0, N).
  double evaluate(ItemSet bundle) const;
  // No range check; the caller guarantees `bundle` is in range.
  double evaluate_unchecked(ItemSet bundle) const;

  ValuationKind kind() const;
  int item_count() const { return item_count_; }
  double scale() const { return scale_; }
  const ValuationParams& params() const { return params_; }

 private:
  double raw(ItemSet bundle) const;

  int item_count_;
  ValuationParams params_;
  double scale_;
};

// Result of an exhaustive property check over all subsets of the items.
struct PropertyReport {
  bool normalized = true;  // w(empty) == 0
  bool monotone = true;
  bool submodular = true;
  bool in_range = true;
  std::string first_violation;

  bool ok() const { return normalized && monotone && submodular && in_range; }
};

// Enumerates all 2^N subsets (requires N <= 20). Submodularity is checked in
// its equivalent local form w(S+j) + w(S+k) >= w(S+j+k) + w(S) for every S
// and distinct j, k outside S.
PropertyReport check_properties(const Valuation& v, double tol = 1e-12);
PropertyReport check_properties(int items,
                                const std::function<double(ItemSet)>& value,
                                double tol = 1e-12);

// Additive noise distributions. Both are symmetric around zero, so the
// unclipped noisy value is unbiased, and both are bounded by epsilon().
struct AdditiveUniform {
  double epsilon = 0.0;
};
struct TruncatedGaussian {
  double sigma = 0.0;
  double clip = 0.0;  // support is [-clip, clip]
};
using NoiseModel = std::variant<AdditiveUniform, TruncatedGaussian>;

// Worst-case additive error of `model`.
double noise_bound(const NoiseModel& model);

// One draw of the noise itself.
double sample_noise(const NoiseModel& model, Rng& rng);

// value + noise, clipped to [0, 1].
double perturb(const NoiseModel& model, double value, Rng& rng);

// A value oracle with bounded additive error around an exact valuation. The
// oracle is stateless; randomness comes from the caller's stream.
class NoisyOracle {
 public:
  NoisyOracle(Valuation base, NoiseModel noise);

  double query(ItemSet bundle, Rng& rng) const;
  double epsilon() const { return noise_bound(noise_); }
  const Valuation& base() const { return base_; }
  const NoiseModel& noise() const { return noise_; }

 private:
  Valuation base_;
  NoiseModel noise_;
};

double evaluate(const Valuation& v, ItemSet bundle);
double noisy_evaluate(const NoisyOracle& oracle, ItemSet bundle, Rng& rng);

// Problem definition: M agents, N items, per-agent valuations and quotas.
class Instance {
 public:
  // Quotas default to N for every agent when empty.
  Instance(int agents, int items, std::vector<Valuation> valuations,
           std::vector<int> quotas = {});

  int agents() const { return agents_; }
  int items() const { return items_; }
  const Valuation& valuation(int agent) const { return valuations_[agent]; }
  const std::vector<Valuation>& valuations() const { return valuations_; }
  int quota(int agent) const { return quotas_[agent]; }
  const std::vector<int>& quotas() const { return quotas_; }
  bool has_binding_quotas() const;

 private:
  int agents_;
  int items_;
  std::vector<Valuation> valuations_;
  std::vector<int> quotas_;
};

// Random instance with every valuation of the given family. Each agent's
// valuation is scaled so that w_i(all items) <= 1/M, hence total welfare of
// any allocation lies in [0, 1].
Instance random_instance(int agents, int items, ValuationKind kind, Rng& rng);

}  // namespace swp

#include "swp/oracle.hpp"

#include "swp/errors.hpp"

namespace swp {

double ValueOracle::bundle_value(int agent, ItemSet bundle, Rng& rng) {
  if (agent < 0 || agent >= inst_->agents()) {
    throw InvalidInput("agent index out of range");
  }
  if (!bundle.subset_of(ItemSet::full(inst_->items()))) {
    throw InvalidInput("bundle has an item index out of range");
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (recording_) {
    record(Allocation::single_agent(inst_->items(), agent, bundle));
  }
  return bundle_query(agent, bundle, rng);
}

double ValueOracle::allocation_value(const Allocation& a, Rng& rng) {
  if (!is_feasible(a, *inst_)) {
    throw InvalidInput("oracle query on an infeasible allocation");
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (recording_) record(a);
  return allocation_query(a, rng);
}

void ValueOracle::record(Allocation action) {
  std::lock_guard lock(mu_);
  actions_.insert(std::move(action));
}

std::uint64_t ValueOracle::distinct_actions() const {
  std::lock_guard lock(mu_);
  return actions_.size();
}

std::set<Allocation> ValueOracle::recorded_actions() const {
  std::lock_guard lock(mu_);
  return actions_;
}

double ExactValueOracle::bundle_query(int agent, ItemSet bundle, Rng&) {
  return instance().valuation(agent).evaluate_unchecked(bundle);
}

double ExactValueOracle::allocation_query(const Allocation& a, Rng&) {
  return welfare(a, instance());
}

NoisyValueOracle::NoisyValueOracle(const Instance& inst, NoiseModel noise)
    : ValueOracle(inst), noise_(noise) {
  if (!(noise_bound(noise_) >= 0.0)) {
    throw InvalidInput("noise bound must be >= 0");
  }
}

double NoisyValueOracle::bundle_query(int agent, ItemSet bundle, Rng& rng) {
  return perturb(noise_,
                 instance().valuation(agent).evaluate_unchecked(bundle), rng);
}

double NoisyValueOracle::allocation_query(const Allocation& a, Rng& rng) {
  return perturb(noise_, welfare(a, instance()), rng);
}

}  // namespace swp

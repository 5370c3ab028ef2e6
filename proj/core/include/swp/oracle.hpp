#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <set>

#include "swp/allocation.hpp"
#include "swp/item_set.hpp"
#include "swp/random.hpp"
#include "swp/valuations.hpp"

namespace swp {

// Value-oracle access used by the offline solver. Two query shapes exist:
// a single agent's bundle value w_i(s), and the welfare of a whole
// allocation. A bundle query is the same action as the allocation where
// agent i holds s and every other agent holds nothing (w_k(empty) = 0), and
// the query recorder counts it that way, so the distinct-action count is
// comparable across oracle implementations.
//
// `rng` is the caller's stream; oracles that need no randomness ignore it.
class ValueOracle {
 public:
  explicit ValueOracle(const Instance& inst) : inst_(&inst) {}
  virtual ~ValueOracle() = default;

  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  double bundle_value(int agent, ItemSet bundle, Rng& rng);
  double allocation_value(const Allocation& a, Rng& rng);

  // True when queries may run concurrently from several threads.
  virtual bool thread_safe() const { return true; }

  const Instance& instance() const { return *inst_; }

  std::uint64_t calls() const { return calls_.load(); }
  void reset_calls() { calls_ = 0; }

  // Distinct actions are tracked only while recording is on.
  void set_recording(bool on) { recording_ = on; }
  std::uint64_t distinct_actions() const;
  std::set<Allocation> recorded_actions() const;

 protected:
  virtual double bundle_query(int agent, ItemSet bundle, Rng& rng) = 0;
  virtual double allocation_query(const Allocation& a, Rng& rng) = 0;

 private:
  void record(Allocation action);

  const Instance* inst_;
  std::atomic<std::uint64_t> calls_{0};
  bool recording_ = false;
  mutable std::mutex mu_;
  std::set<Allocation> actions_;
};

// Exact w_i and f.
class ExactValueOracle final : public ValueOracle {
 public:
  using ValueOracle::ValueOracle;

 protected:
  double bundle_query(int agent, ItemSet bundle, Rng& rng) override;
  double allocation_query(const Allocation& a, Rng& rng) override;
};

// Exact value plus bounded noise, clipped to [0, 1]. Every answer is within
// noise_bound(noise) of the truth, and fresh noise is drawn per query.
class NoisyValueOracle final : public ValueOracle {
 public:
  NoisyValueOracle(const Instance& inst, NoiseModel noise);
  double epsilon() const { return noise_bound(noise_); }

 protected:
  double bundle_query(int agent, ItemSet bundle, Rng& rng) override;
  double allocation_query(const Allocation& a, Rng& rng) override;

 private:
  NoiseModel noise_;
};

}  // namespace swp

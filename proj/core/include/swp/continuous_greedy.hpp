#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "swp/allocation.hpp"
#include "swp/multilinear.hpp"
#include "swp/oracle.hpp"
#include "swp/random.hpp"
#include "swp/valuations.hpp"

namespace swp {

enum class OracleMode { kExact, kNoisy };

struct CGConfig {
  // Step size; 1/lambda must be a positive integer.
  double lambda = 1.0 / 16.0;
  // Samples per marginal estimate; 0 selects 64 * M * N.
  int samples = 0;
  // Independent roundings of y(1); the best one is returned.
  int roundings = 16;
  OracleMode oracle_mode = OracleMode::kExact;
  // Additive-uniform noise half-width used when oracle_mode is kNoisy.
  double noise_epsilon = 0.0;
  bool record_queries = false;
  // Worker threads for the per-round marginal estimates.
  int threads = 1;

  // lambda = 1/(MN)^2 and Z = (MN)^5: the worst-case accounting preset.
  static CGConfig canonical(int agents, int items);

  // Number of rounds 1/lambda. Throws ConfigError when lambda is not a unit
  // fraction in (0, 1].
  int steps() const;
  int resolved_samples(const Instance& inst) const;
  void validate() const;
};

struct CGResult {
  FractionalPoint y_final;
  Allocation allocation;
  // Exact welfare of `allocation` (reporting only; never used for choices).
  double welfare = 0.0;
  // Value of `allocation` as seen by the oracle when it was selected.
  double selected_value = 0.0;
  // Monte-Carlo estimate of F(y_final) from exact valuations (diagnostic).
  double F_estimate = 0.0;
  // Oracle calls spent by the fractional phase; equals 2 * Z * M * N / lambda.
  std::uint64_t oracle_calls = 0;
  // Oracle calls spent choosing among the roundings.
  std::uint64_t selection_calls = 0;
  // Distinct actions queried (only when record_queries is on).
  std::uint64_t eta_measured = 0;
  std::vector<Allocation> queried_actions;
};

using StepObserver = std::function<void(int step, const FractionalPoint& y)>;

// Oracle matching cfg.oracle_mode.
std::unique_ptr<ValueOracle> make_oracle(const Instance& inst,
                                         const CGConfig& cfg);

// Fractional ascent: 1/lambda rounds; each round estimates every marginal,
// then moves lambda of mass along the best independent direction. Marginal
// (round, i, j) draws from its own stream derived from `seed`, so results do
// not depend on thread scheduling.
FractionalPoint run_fractional(const Instance& inst, const CGConfig& cfg,
                               ValueOracle& oracle, std::uint64_t seed,
                               const StepObserver& observer = {});

// Per-item categorical rounding: item j goes to agent i with probability
// y(i, j) and stays unassigned with probability 1 - sum_i y(i, j). Items over
// an agent's quota are evicted in increasing-marginal order (marginals via
// `oracle`) and handed to the next agent with positive mass and spare quota.
Allocation round_to_allocation(const FractionalPoint& y, const Instance& inst,
                               Rng& rng, ValueOracle& oracle);
Allocation round_to_allocation(const FractionalPoint& y, const Instance& inst,
                               Rng& rng);

// run_fractional followed by the best of cfg.roundings roundings, scored by
// `oracle`.
CGResult solve(const Instance& inst, const CGConfig& cfg, ValueOracle& oracle,
               std::uint64_t seed);
CGResult solve(const Instance& inst, const CGConfig& cfg, std::uint64_t seed);

}  // namespace swp

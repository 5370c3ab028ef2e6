#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swp/allocation.hpp"
#include "swp/continuous_greedy.hpp"
#include "swp/random.hpp"
#include "swp/valuations.hpp"

namespace swp {

// 1 - 1/e.
inline constexpr double kAlphaContinuousGreedy = 0.63212055882855767840;

// Stochastic full-bandit environment. Playing an allocation returns only the
// aggregate welfare plus noise; no per-agent or per-item values are exposed.
// Noise is uniform with half-width min(nu, f(A), 1 - f(A)), so rewards stay in
// [0, 1] and remain unbiased.
class Environment {
 public:
  Environment(Instance inst, double noise);

  int agents() const { return inst_.agents(); }
  int items() const { return inst_.items(); }
  const std::vector<int>& quotas() const { return inst_.quotas(); }
  double noise() const { return noise_; }

  // Throws InvalidInput for infeasible allocations.
  double sample_reward(const Allocation& a, Rng& rng) const;
  // E[f_t(a)], used for regret bookkeeping and the calibration dry run.
  double mean_reward(const Allocation& a) const;

 private:
  Instance inst_;
  double noise_;
};

// Instance carrying only the problem shape (agents, items, quotas) with
// all-zero placeholder valuations. This is what the learner's offline
// subroutine is given.
Instance shape_only(int agents, int items, const std::vector<int>& quotas);

// Theoretical resilience constants of continuous greedy.
double theoretical_delta(int agents, int items);  // 4MN + 2M
double theoretical_eta(int agents, int items);    // (MN)^8

// ceil(delta^{2/3} T^{2/3} M^{2/3} (log T)^{1/3} / (2 eta^{2/3})), at least 1.
// For T < 3 the log factor is below 1 (and zero at T = 1); the formula is
// still applied as written.
std::int64_t exploration_length(double horizon, double delta, double agents,
                                double eta);
// The same expression before the ceiling.
double exploration_length_unrounded(double horizon, double delta,
                                    double agents, double eta);

// m* = (T delta C / (2 eta) * sqrt(log T / 2))^{2/3}.
double optimal_m(double horizon, double delta, double c, double eta);

// g(m) = eta m + T delta C sqrt(log T / 2) m^{-1/2}, minimized by optimal_m.
double exploration_objective(double m, double horizon, double delta, double c,
                             double eta);
double exploration_objective_derivative(double m, double horizon, double delta,
                                        double c, double eta);

// rad = sqrt(log T / (2 m)).
double confidence_radius(double plays, double horizon);

enum class EtaMode { kMeasured, kTheoretical, kFixed };
enum class MFormula { kAlgorithm, kProposition };

struct EtcConfig {
  std::int64_t horizon = 1000;
  // Plays per explored action; empty selects the closed-form length.
  std::optional<std::int64_t> plays;
  MFormula formula = MFormula::kAlgorithm;
  EtaMode eta_mode = EtaMode::kMeasured;
  double eta = 0.0;  // used with EtaMode::kFixed
  // Robustness constant; empty selects theoretical_delta.
  std::optional<double> delta;
  // Aggregation constant: 1, or M for the agent-aggregated model.
  double c = 1.0;
  double alpha = kAlphaContinuousGreedy;
  CGConfig offline;

  void validate() const;
};

struct OracleLogEntry {
  Allocation action;
  std::int64_t plays = 0;
  double empirical_mean = 0.0;
};

// Every distinct action played during exploration, in first-play order.
struct OracleLog {
  std::vector<OracleLogEntry> entries;
  std::size_t distinct_actions() const { return entries.size(); }
};

struct RegretTrace {
  std::vector<double> per_round_reward;
  std::vector<double> cumulative_alpha_regret;
  // Number of exploration rounds T_eta; rounds after it are exploitation.
  std::int64_t phase_boundary = 0;
  double alpha = kAlphaContinuousGreedy;
  double opt_value = 0.0;
  // Exploration ran out of horizon before the offline subroutine finished.
  bool truncated = false;

  std::int64_t horizon() const {
    return static_cast<std::int64_t>(per_round_reward.size());
  }
  // Builds cumulative_alpha_regret from per_round_reward.
  void accumulate();
};

struct EtcResult {
  RegretTrace trace;
  OracleLog log;
  Allocation committed;
  std::int64_t plays = 0;  // resolved m
  double eta = 0.0;        // eta used to size m
  double eta_measured = 0.0;
  double delta = 0.0;
  double c = 1.0;
  double radius = 0.0;  // rad at m plays
  // Every explored action's empirical mean within c * rad(plays_k) of its
  // true mean.
  bool clean_event = true;
  // alpha * OPT - f(committed).
  double exploitation_gap = 0.0;
  double exploration_regret = 0.0;
  double exploitation_regret = 0.0;
};

// Distinct actions the offline subroutine queries when answered with exact
// mean rewards (the calibration dry run for EtaMode::kMeasured).
std::uint64_t measure_eta(const Environment& env, const CGConfig& offline,
                          std::uint64_t seed);

// Explore-then-commit. The offline subroutine runs against a bandit-backed
// value oracle: each distinct action (a bundle query for agent i is the
// allocation giving agent i that bundle and nobody anything else) is played
// m times and answered with its empirical mean; repeat queries reuse it.
// Its output is then played for the remaining rounds.
EtcResult run_etc(const Environment& env, const EtcConfig& cfg,
                  double opt_value, std::uint64_t seed);

// alpha * T * OPT - sum of rewards.
double alpha_regret(const RegretTrace& trace);

}  // namespace swp

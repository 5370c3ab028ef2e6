#include "swp/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "swp/errors.hpp"

namespace swp {

namespace {

constexpr std::uint64_t kRewardStream = 11;
constexpr std::uint64_t kOfflineStream = 12;

}  // namespace

Environment::Environment(Instance inst, double noise)
    : inst_(std::move(inst)), noise_(noise) {
  if (!(noise_ >= 0.0)) throw InvalidInput("reward noise must be >= 0");
}

double Environment::mean_reward(const Allocation& a) const {
  return welfare(a, inst_);
}

double Environment::sample_reward(const Allocation& a, Rng& rng) const {
  const double mean = std::clamp(mean_reward(a), 0.0, 1.0);
  const double half = std::min({noise_, mean, 1.0 - mean});
  // Always consume one draw so the stream does not depend on the action.
  const double u = uniform01(rng);
  if (half <= 0.0) return mean;
  return std::clamp(mean + half * (2.0 * u - 1.0), 0.0, 1.0);
}

Instance shape_only(int agents, int items, const std::vector<int>& quotas) {
  std::vector<Valuation> zero(agents, Valuation(items, MatroidRankParams{0}));
  return Instance(agents, items, std::move(zero), quotas);
}

double theoretical_delta(int agents, int items) {
  return 4.0 * agents * items + 2.0 * agents;
}

double theoretical_eta(int agents, int items) {
  return std::pow(static_cast<double>(agents) * items, 8.0);
}

double exploration_length_unrounded(double horizon, double delta,
                                    double agents, double eta) {
  if (!(horizon > 0) || !(delta > 0) || !(agents > 0) || !(eta > 0)) {
    throw InvalidInput("exploration_length needs positive inputs");
  }
  const double log_t = std::max(0.0, std::log(horizon));
  return std::cbrt(delta * delta) * std::cbrt(horizon * horizon) *
         std::cbrt(agents * agents) * std::cbrt(log_t) /
         (2.0 * std::cbrt(eta * eta));
}

std::int64_t exploration_length(double horizon, double delta, double agents,
                                double eta) {
  const double value =
      exploration_length_unrounded(horizon, delta, agents, eta);
  if (!(value < 9.0e18)) return INT64_MAX;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(value)));
}

double optimal_m(double horizon, double delta, double c, double eta) {
  if (!(horizon > 1) || !(delta > 0) || !(c > 0) || !(eta > 0)) {
    throw InvalidInput("optimal_m needs T > 1 and positive constants");
  }
  const double inner =
      horizon * delta * c / (2.0 * eta) * std::sqrt(std::log(horizon) / 2.0);
  return std::cbrt(inner * inner);
}

double exploration_objective(double m, double horizon, double delta, double c,
                             double eta) {
  return eta * m +
         horizon * delta * c * std::sqrt(std::log(horizon) / 2.0) / std::sqrt(m);
}

double exploration_objective_derivative(double m, double horizon, double delta,
                                        double c, double eta) {
  return eta - 0.5 * horizon * delta * c * std::sqrt(std::log(horizon) / 2.0) *
                   std::pow(m, -1.5);
}

double confidence_radius(double plays, double horizon) {
  if (!(plays > 0) || !(horizon > 1)) {
    throw InvalidInput("confidence_radius needs m > 0 and T > 1");
  }
  return std::sqrt(std::log(horizon) / (2.0 * plays));
}

void EtcConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (plays && *plays < 1) throw ConfigError("plays per action must be >= 1");
  if (eta_mode == EtaMode::kFixed && !(eta > 0)) {
    throw ConfigError("fixed eta must be positive");
  }
  if (delta && !(*delta > 0)) throw ConfigError("delta must be positive");
  if (!(c > 0)) throw ConfigError("C must be positive");
  offline.validate();
}

void RegretTrace::accumulate() {
  cumulative_alpha_regret.resize(per_round_reward.size());
  const double benchmark = alpha * opt_value;
  double total = 0.0;
  for (std::size_t t = 0; t < per_round_reward.size(); ++t) {
    total += benchmark - per_round_reward[t];
    cumulative_alpha_regret[t] = total;
  }
}

double alpha_regret(const RegretTrace& trace) {
  double rewards = 0.0;
  for (double r : trace.per_round_reward) rewards += r;
  return trace.alpha * static_cast<double>(trace.horizon()) * trace.opt_value -
         rewards;
}

namespace {

// Answers queries with the environment's mean reward of the embedded action.
class MeanRewardOracle final : public ValueOracle {
 public:
  MeanRewardOracle(const Instance& shape, const Environment& env)
      : ValueOracle(shape), env_(env) {}

 protected:
  double bundle_query(int agent, ItemSet bundle, Rng& rng) override {
    return allocation_query(
        Allocation::single_agent(instance().items(), agent, bundle), rng);
  }
  double allocation_query(const Allocation& a, Rng&) override {
    return env_.mean_reward(a);
  }

 private:
  const Environment& env_;
};

struct BudgetExhausted {};

// Plays each new action `plays` times against the environment and caches the
// empirical mean. Throws BudgetExhausted once the horizon is used up.
class BanditOracle final : public ValueOracle {
 public:
  BanditOracle(const Instance& shape, const Environment& env,
               std::int64_t plays, std::int64_t horizon, Rng& reward_rng,
               std::vector<double>& rewards, OracleLog& log)
      : ValueOracle(shape),
        env_(env),
        plays_(plays),
        horizon_(horizon),
        rng_(reward_rng),
        rewards_(rewards),
        log_(log) {}

  bool thread_safe() const override { return false; }

 protected:
  double bundle_query(int agent, ItemSet bundle, Rng& rng) override {
    return allocation_query(
        Allocation::single_agent(instance().items(), agent, bundle), rng);
  }

  double allocation_query(const Allocation& a, Rng&) override {
    if (auto it = index_.find(a); it != index_.end()) {
      return log_.entries[it->second].empirical_mean;
    }
    if (static_cast<std::int64_t>(rewards_.size()) >= horizon_) {
      throw BudgetExhausted{};
    }
    index_.emplace(a, log_.entries.size());
    log_.entries.push_back({a, 0, 0.0});
    double sum = 0.0;
    std::int64_t played = 0;
    for (; played < plays_ &&
           static_cast<std::int64_t>(rewards_.size()) < horizon_;
         ++played) {
      const double r = env_.sample_reward(a, rng_);
      rewards_.push_back(r);
      sum += r;
    }
    OracleLogEntry& entry = log_.entries.back();
    entry.plays = played;
    entry.empirical_mean = sum / static_cast<double>(played);
    if (played < plays_) throw BudgetExhausted{};
    return entry.empirical_mean;
  }

 private:
  const Environment& env_;
  std::int64_t plays_;
  std::int64_t horizon_;
  Rng& rng_;
  std::vector<double>& rewards_;
  OracleLog& log_;
  std::map<Allocation, std::size_t> index_;
};

}  // namespace

std::uint64_t measure_eta(const Environment& env, const CGConfig& offline,
                          std::uint64_t seed) {
  const Instance shape = shape_only(env.agents(), env.items(), env.quotas());
  MeanRewardOracle oracle(shape, env);
  CGConfig cfg = offline;
  cfg.record_queries = true;
  return solve(shape, cfg, oracle, derive_seed(seed, {kOfflineStream}))
      .eta_measured;
}

EtcResult run_etc(const Environment& env, const EtcConfig& cfg,
                  double opt_value, std::uint64_t seed) {
  cfg.validate();
  const int agents = env.agents();
  const int items = env.items();
  const double horizon = static_cast<double>(cfg.horizon);

  EtcResult result;
  result.delta = cfg.delta.value_or(theoretical_delta(agents, items));
  result.c = cfg.c;
  result.eta_measured =
      static_cast<double>(measure_eta(env, cfg.offline, seed));
  switch (cfg.eta_mode) {
    case EtaMode::kMeasured:
      result.eta = result.eta_measured;
      break;
    case EtaMode::kTheoretical:
      result.eta = theoretical_eta(agents, items);
      break;
    case EtaMode::kFixed:
      result.eta = cfg.eta;
      break;
  }
  if (cfg.plays) {
    result.plays = *cfg.plays;
  } else if (cfg.formula == MFormula::kAlgorithm) {
    result.plays = exploration_length(horizon, result.delta, agents, result.eta);
  } else {
    const double m_star =
        horizon > 1 ? optimal_m(horizon, result.delta, cfg.c, result.eta) : 1.0;
    result.plays = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(std::min(m_star, 9.0e18))));
  }
  result.radius = horizon > 1 ? confidence_radius(result.plays, horizon) : 0.0;

  RegretTrace& trace = result.trace;
  trace.alpha = cfg.alpha;
  trace.opt_value = opt_value;
  trace.per_round_reward.reserve(cfg.horizon);

  Rng reward_rng = derive_stream(seed, {kRewardStream});
  const Instance shape = shape_only(agents, items, env.quotas());
  BanditOracle oracle(shape, env, result.plays, cfg.horizon, reward_rng,
                      trace.per_round_reward, result.log);
  std::optional<Allocation> committed;
  try {
    committed = solve(shape, cfg.offline, oracle,
                      derive_seed(seed, {kOfflineStream}))
                    .allocation;
  } catch (const BudgetExhausted&) {
    trace.truncated = true;
  }
  trace.phase_boundary = trace.horizon();

  if (!committed) {
    // Best empirical action so far; ties keep the earliest.
    const OracleLogEntry* best = nullptr;
    for (const auto& e : result.log.entries) {
      if (!best || e.empirical_mean > best->empirical_mean) best = &e;
    }
    committed = best ? best->action : Allocation(items);
  }
  result.committed = *committed;
  while (trace.horizon() < cfg.horizon) {
    trace.per_round_reward.push_back(
        env.sample_reward(result.committed, reward_rng));
  }
  trace.accumulate();

  for (const auto& e : result.log.entries) {
    const double threshold =
        horizon > 1 ? cfg.c * confidence_radius(e.plays, horizon) : 0.0;
    if (!(std::abs(e.empirical_mean - env.mean_reward(e.action)) < threshold)) {
      result.clean_event = false;
    }
  }
  result.exploitation_gap =
      cfg.alpha * opt_value - env.mean_reward(result.committed);
  const std::int64_t boundary = trace.phase_boundary;
  result.exploration_regret =
      boundary > 0 ? trace.cumulative_alpha_regret[boundary - 1] : 0.0;
  double exploit = 0.0;
  const double benchmark = trace.alpha * trace.opt_value;
  for (std::int64_t t = boundary; t < trace.horizon(); ++t) {
    exploit += benchmark - trace.per_round_reward[t];
  }
  result.exploitation_regret = exploit;
  return result;
}

}  // namespace swp

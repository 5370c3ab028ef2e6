#include "swp/continuous_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.hpp"
#include "swp/errors.hpp"

namespace swp {

namespace {

// Stream tags keep marginal, rounding and diagnostic draws disjoint.
constexpr std::uint64_t kMarginalStream = 1;
constexpr std::uint64_t kRoundingStream = 2;
constexpr std::uint64_t kDiagnosticStream = 3;

}  // namespace

CGConfig CGConfig::canonical(int agents, int items) {
  CGConfig cfg;
  const double mn = static_cast<double>(agents) * items;
  cfg.lambda = 1.0 / (mn * mn);
  cfg.samples = static_cast<int>(std::min(std::pow(mn, 5.0), 2.0e9));
  return cfg;
}

int CGConfig::steps() const {
  if (!(lambda > 0.0) || lambda > 1.0) {
    throw ConfigError("step size must lie in (0, 1]");
  }
  const double inv = 1.0 / lambda;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded || rounded > 1e9) {
    throw ConfigError("1/lambda must be a positive integer");
  }
  return static_cast<int>(rounded);
}

int CGConfig::resolved_samples(const Instance& inst) const {
  return samples > 0 ? samples : 64 * inst.agents() * inst.items();
}

void CGConfig::validate() const {
  steps();
  if (samples < 0) throw ConfigError("sample count must be >= 0");
  if (roundings < 1) throw ConfigError("need at least one rounding");
  if (threads < 1) throw ConfigError("thread count must be >= 1");
  if (oracle_mode == OracleMode::kNoisy && !(noise_epsilon >= 0.0)) {
    throw ConfigError("noise epsilon must be >= 0");
  }
}

std::unique_ptr<ValueOracle> make_oracle(const Instance& inst,
                                         const CGConfig& cfg) {
  if (cfg.oracle_mode == OracleMode::kNoisy) {
    return std::make_unique<NoisyValueOracle>(
        inst, AdditiveUniform{cfg.noise_epsilon});
  }
  return std::make_unique<ExactValueOracle>(inst);
}

namespace {

// For each item, the agent receiving mass this round, or kUnassigned.
std::vector<int> choose_direction(const Instance& inst,
                                  const std::vector<double>& gain) {
  const int m = inst.agents();
  const int n = inst.items();
  std::vector<int> pick(n, kUnassigned);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    for (int i = 1; i < m; ++i) {
      if (gain[i * n + j] > gain[best * n + j]) best = i;
    }
    pick[j] = best;
  }
  if (!inst.has_binding_quotas()) return pick;

  // Each agent keeps its b_i largest-gain picks of this round.
  for (int i = 0; i < m; ++i) {
    std::vector<int> mine;
    for (int j = 0; j < n; ++j) {
      if (pick[j] == i) mine.push_back(j);
    }
    if (static_cast<int>(mine.size()) <= inst.quota(i)) continue;
    std::stable_sort(mine.begin(), mine.end(), [&](int a, int b) {
      return gain[i * n + a] > gain[i * n + b];
    });
    for (std::size_t k = inst.quota(i); k < mine.size(); ++k) {
      pick[mine[k]] = kUnassigned;
    }
  }
  return pick;
}

}  // namespace

FractionalPoint run_fractional(const Instance& inst, const CGConfig& cfg,
                               ValueOracle& oracle, std::uint64_t seed,
                               const StepObserver& observer) {
  cfg.validate();
  if (&oracle.instance() != &inst) {
    throw InvalidInput("oracle is bound to a different instance");
  }
  const int m = inst.agents();
  const int n = inst.items();
  const int steps = cfg.steps();
  const int z = cfg.resolved_samples(inst);
  const int threads = oracle.thread_safe() ? cfg.threads : 1;

  FractionalPoint y(m, n);
  std::vector<double> gain(static_cast<std::size_t>(m) * n);
  for (int step = 0; step < steps; ++step) {
    const FractionalPoint snapshot = y;
    detail::parallel_for(gain.size(), threads, [&](std::size_t k) {
      const int i = static_cast<int>(k) / n;
      const int j = static_cast<int>(k) % n;
      Rng rng = derive_stream(
          seed, {kMarginalStream, static_cast<std::uint64_t>(step),
                 static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
      gain[k] = estimate_marginal(snapshot, i, j, z, rng, oracle).mean;
    });
    const std::vector<int> pick = choose_direction(inst, gain);
    for (int j = 0; j < n; ++j) {
      if (pick[j] != kUnassigned) y.add(pick[j], j, cfg.lambda);
    }
    if (observer) observer(step + 1, y);
  }
  return y;
}

Allocation round_to_allocation(const FractionalPoint& y, const Instance& inst,
                               Rng& rng, ValueOracle& oracle) {
  if (y.agents() != inst.agents() || y.items() != inst.items()) {
    throw InvalidInput("fractional point shape does not match instance");
  }
  const int m = inst.agents();
  const int n = inst.items();
  Allocation a(n);
  for (int j = 0; j < n; ++j) {
    const double u = uniform01(rng);
    double cumulative = 0.0;
    for (int i = 0; i < m; ++i) {
      cumulative += y(i, j);
      if (u < cumulative) {
        a.assign(j, i);
        break;
      }
    }
  }
  if (!inst.has_binding_quotas()) return a;

  std::vector<int> load(m, 0);
  for (int owner : a.assignment()) {
    if (owner != kUnassigned) ++load[owner];
  }
  for (int i = 0; i < m; ++i) {
    if (load[i] <= inst.quota(i)) continue;
    ItemSet bundle = bundles(a, m)[i];
    const double full = oracle.bundle_value(i, bundle, rng);
    std::vector<std::pair<double, int>> by_marginal;
    for (int j : bundle.items()) {
      by_marginal.emplace_back(full - oracle.bundle_value(i, bundle.without(j), rng), j);
    }
    std::stable_sort(by_marginal.begin(), by_marginal.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [marginal, j] : by_marginal) {
      if (load[i] <= inst.quota(i)) break;
      a.unassign(j);
      --load[i];
      std::vector<int> others;
      for (int k = 0; k < m; ++k) {
        if (k != i && y(k, j) > 0.0) others.push_back(k);
      }
      std::stable_sort(others.begin(), others.end(),
                       [&](int l, int r) { return y(l, j) > y(r, j); });
      for (int k : others) {
        if (load[k] < inst.quota(k)) {
          a.assign(j, k);
          ++load[k];
          break;
        }
      }
    }
  }
  return a;
}

Allocation round_to_allocation(const FractionalPoint& y, const Instance& inst,
                               Rng& rng) {
  ExactValueOracle oracle(inst);
  return round_to_allocation(y, inst, rng, oracle);
}

CGResult solve(const Instance& inst, const CGConfig& cfg, ValueOracle& oracle,
               std::uint64_t seed) {
  cfg.validate();
  oracle.set_recording(cfg.record_queries);
  const std::uint64_t before = oracle.calls();
  FractionalPoint y = run_fractional(inst, cfg, oracle, seed);
  const std::uint64_t after_fractional = oracle.calls();

  Allocation best;
  double best_value = -1.0;
  for (int r = 0; r < cfg.roundings; ++r) {
    Rng rng = derive_stream(seed, {kRoundingStream, static_cast<std::uint64_t>(r)});
    Allocation candidate = round_to_allocation(y, inst, rng, oracle);
    const double value = oracle.allocation_value(candidate, rng);
    if (value > best_value) {
      best_value = value;
      best = std::move(candidate);
    }
  }

  CGResult result{.y_final = y, .allocation = best, .queried_actions = {}};
  result.selected_value = best_value;
  result.welfare = welfare(result.allocation, inst);
  Rng diag = derive_stream(seed, {kDiagnosticStream});
  result.F_estimate = estimate_F(y, inst, cfg.resolved_samples(inst), diag);
  result.oracle_calls = after_fractional - before;
  result.selection_calls = oracle.calls() - after_fractional;
  if (cfg.record_queries) {
    result.eta_measured = oracle.distinct_actions();
    const auto actions = oracle.recorded_actions();
    result.queried_actions.assign(actions.begin(), actions.end());
  }
  return result;
}

CGResult solve(const Instance& inst, const CGConfig& cfg, std::uint64_t seed) {
  auto oracle = make_oracle(inst, cfg);
  return solve(inst, cfg, *oracle, seed);
}

}  // namespace swp

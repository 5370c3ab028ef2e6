#include "swp/valuations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "swp/errors.hpp"

namespace swp {

std::string ItemSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int j : items()) {
    if (!first) os << ',';
    os << j;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string_view to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::kModular:
      return "modular";
    case ValuationKind::kCoverage:
      return "coverage";
    case ValuationKind::kBudgetAdditive:
      return "budget_additive";
    case ValuationKind::kMatroidRankScaled:
      return "matroid_rank_scaled";
  }
  return "unknown";
}

ValuationKind parse_valuation_kind(std::string_view name) {
  for (auto kind : {ValuationKind::kModular, ValuationKind::kCoverage,
                    ValuationKind::kBudgetAdditive,
                    ValuationKind::kMatroidRankScaled}) {
    if (name == to_string(kind)) return kind;
  }
  throw InvalidInput("unsupported valuation kind: " + std::string(name));
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_weights(const std::vector<double>& weights, int n,
                   const char* what) {
  if (static_cast<int>(weights.size()) != n) {
    throw InvalidInput(std::string(what) + ": expected one weight per item");
  }
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidInput(std::string(what) + ": weights must be finite and >= 0");
    }
  }
}

double sum_over(const std::vector<double>& weights, ItemSet bundle) {
  double total = 0.0;
  for (std::uint64_t b = bundle.bits(); b != 0; b &= b - 1) {
    total += weights[std::countr_zero(b)];
  }
  return total;
}

}  // namespace

Valuation::Valuation(int item_count, ValuationParams params, double scale)
    : item_count_(item_count), params_(std::move(params)), scale_(scale) {
  if (item_count_ < 1 || item_count_ > kMaxItems) {
    throw InvalidInput("item count must be in [1, 64]");
  }
  if (!std::isfinite(scale_) || scale_ <= 0.0) {
    throw InvalidInput("valuation scale must be positive");
  }
  std::visit(
      Overloaded{
          [&](const ModularParams& p) {
            check_weights(p.weights, item_count_, "modular");
          },
          [&](const CoverageParams& p) {
            if (static_cast<int>(p.covers.size()) != item_count_) {
              throw InvalidInput("coverage: expected one cover set per item");
            }
            if (p.universe_size < 1 || p.universe_size > 64) {
              throw InvalidInput("coverage: universe size must be in [1, 64]");
            }
            const std::uint64_t universe =
                ItemSet::full(p.universe_size).bits();
            for (std::uint64_t c : p.covers) {
              if ((c & ~universe) != 0) {
                throw InvalidInput("coverage: element outside the universe");
              }
            }
          },
          [&](const BudgetAdditiveParams& p) {
            check_weights(p.weights, item_count_, "budget_additive");
            if (!std::isfinite(p.cap) || p.cap < 0.0) {
              throw InvalidInput("budget_additive: cap must be >= 0");
            }
          },
          [&](const MatroidRankParams& p) {
            if (p.rank < 0 || p.rank > item_count_) {
              throw InvalidInput("matroid_rank_scaled: rank must be in [0, N]");
            }
          },
      },
      params_);
  const double top = scale_ * raw(ItemSet::full(item_count_));
  if (top > 1.0 + 1e-12) {
    throw InvalidInput("valuation exceeds 1 on the full item set");
  }
}

ValuationKind Valuation::kind() const {
  return static_cast<ValuationKind>(params_.index());
}

double Valuation::raw(ItemSet bundle) const {
  return std::visit(
      Overloaded{
          [&](const ModularParams& p) { return sum_over(p.weights, bundle); },
          [&](const CoverageParams& p) {
            std::uint64_t covered = 0;
            for (std::uint64_t b = bundle.bits(); b != 0; b &= b - 1) {
              covered |= p.covers[std::countr_zero(b)];
            }
            return static_cast<double>(std::popcount(covered));
          },
          [&](const BudgetAdditiveParams& p) {
            return std::min(p.cap, sum_over(p.weights, bundle));
          },
          [&](const MatroidRankParams& p) {
            return static_cast<double>(std::min(bundle.size(), p.rank));
          },
      },
      params_);
}

double Valuation::evaluate_unchecked(ItemSet bundle) const {
  return scale_ * raw(bundle);
}

double Valuation::evaluate(ItemSet bundle) const {
  if (!bundle.subset_of(ItemSet::full(item_count_))) {
    throw InvalidInput("bundle " + bundle.to_string() +
                       " has an item index outside [0, " +
                       std::to_string(item_count_) + ")");
  }
  return evaluate_unchecked(bundle);
}

double evaluate(const Valuation& v, ItemSet bundle) {
  return v.evaluate(bundle);
}

PropertyReport check_properties(const Valuation& v, double tol) {
  return check_properties(
      v.item_count(), [&](ItemSet s) { return v.evaluate_unchecked(s); }, tol);
}

PropertyReport check_properties(int n,
                                const std::function<double(ItemSet)>& fn,
                                double tol) {
  if (n < 1 || n > 20) throw SizeError("exhaustive property check needs N <= 20");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> value(count);
  for (std::uint64_t s = 0; s < count; ++s) value[s] = fn(ItemSet(s));
  PropertyReport report;
  auto note = [&](const std::string& msg) {
    if (report.first_violation.empty()) report.first_violation = msg;
  };
  if (value[0] != 0.0) {
    report.normalized = false;
    note("w(empty) != 0");
  }
  for (std::uint64_t s = 0; s < count; ++s) {
    if (value[s] < -tol || value[s] > 1.0 + tol) {
      report.in_range = false;
      note("out of range at " + ItemSet(s).to_string());
    }
    for (int j = 0; j < n; ++j) {
      const std::uint64_t bj = std::uint64_t{1} << j;
      if (s & bj) continue;
      const double gain_j = value[s | bj] - value[s];
      if (gain_j < -tol) {
        report.monotone = false;
        note("monotonicity fails adding " + std::to_string(j) + " to " +
             ItemSet(s).to_string());
      }
      for (int k = j + 1; k < n; ++k) {
        const std::uint64_t bk = std::uint64_t{1} << k;
        if (s & bk) continue;
        // gain of j at S must be >= gain of j at S+k
        if (gain_j + tol < value[s | bj | bk] - value[s | bk]) {
          report.submodular = false;
          note("submodularity fails at S=" + ItemSet(s).to_string() +
               " j=" + std::to_string(j) + " k=" + std::to_string(k));
        }
      }
    }
  }
  return report;
}

double noise_bound(const NoiseModel& model) {
  return std::visit(Overloaded{
                        [](const AdditiveUniform& u) { return u.epsilon; },
                        [](const TruncatedGaussian& g) { return g.clip; },
                    },
                    model);
}

namespace {

// Box-Muller; kept local so draws are identical across standard libraries.
double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

double sample_noise(const NoiseModel& model, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const AdditiveUniform& u) {
            if (u.epsilon <= 0.0) return 0.0;
            return uniform(rng, -u.epsilon, u.epsilon);
          },
          [&](const TruncatedGaussian& g) {
            if (g.clip <= 0.0 || g.sigma <= 0.0) return 0.0;
            // Rejection keeps the distribution symmetric; acceptance
            // probability is at least P(|Z| < clip/sigma).
            for (int attempt = 0; attempt < 10000; ++attempt) {
              const double z = g.sigma * standard_normal(rng);
              if (std::abs(z) <= g.clip) return z;
            }
            return uniform(rng, -g.clip, g.clip);
          },
      },
      model);
}

double perturb(const NoiseModel& model, double value, Rng& rng) {
  return std::clamp(value + sample_noise(model, rng), 0.0, 1.0);
}

namespace {

void validate_noise(const NoiseModel& noise) {
  std::visit(Overloaded{
                 [](const AdditiveUniform& u) {
                   if (!(u.epsilon >= 0.0)) {
                     throw InvalidInput("noise epsilon must be >= 0");
                   }
                 },
                 [](const TruncatedGaussian& g) {
                   if (!(g.sigma >= 0.0) || !(g.clip >= 0.0)) {
                     throw InvalidInput("noise sigma and clip must be >= 0");
                   }
                 },
             },
             noise);
}

}  // namespace

NoisyOracle::NoisyOracle(Valuation base, NoiseModel noise)
    : base_(std::move(base)), noise_(noise) {
  validate_noise(noise_);
}

double NoisyOracle::query(ItemSet bundle, Rng& rng) const {
  return perturb(noise_, base_.evaluate(bundle), rng);
}

double noisy_evaluate(const NoisyOracle& oracle, ItemSet bundle, Rng& rng) {
  return oracle.query(bundle, rng);
}

Instance::Instance(int agents, int items, std::vector<Valuation> valuations,
                   std::vector<int> quotas)
    : agents_(agents),
      items_(items),
      valuations_(std::move(valuations)),
      quotas_(std::move(quotas)) {
  if (agents_ < 1) throw InvalidInput("instance needs at least one agent");
  if (items_ < 1 || items_ > kMaxItems) {
    throw InvalidInput("instance item count must be in [1, 64]");
  }
  if (static_cast<int>(valuations_.size()) != agents_) {
    throw InvalidInput("instance needs one valuation per agent");
  }
  for (const auto& v : valuations_) {
    if (v.item_count() != items_) {
      throw InvalidInput("valuation item count does not match instance");
    }
  }
  if (quotas_.empty()) quotas_.assign(agents_, items_);
  if (static_cast<int>(quotas_.size()) != agents_) {
    throw InvalidInput("instance needs one quota per agent");
  }
  for (int b : quotas_) {
    if (b < 0 || b > items_) throw InvalidInput("quota must be in [0, N]");
  }
}

bool Instance::has_binding_quotas() const {
  return std::any_of(quotas_.begin(), quotas_.end(),
                     [&](int b) { return b < items_; });
}

namespace {

Valuation random_valuation(int agents, int n, ValuationKind kind, Rng& rng) {
  // Per-agent share of the unit welfare budget, in [0.5/M, 1/M].
  const double share = uniform(rng, 0.5, 1.0) / agents;
  switch (kind) {
    case ValuationKind::kModular: {
      // Each weight lands in [0, 1/(N M)].
      std::vector<double> w(n);
      for (double& x : w) x = uniform01(rng) / (static_cast<double>(n) * agents);
      return Valuation(n, ModularParams{std::move(w)});
    }
    case ValuationKind::kCoverage: {
      const int universe = std::min(64, 2 * n + 2);
      std::vector<std::uint64_t> covers(n);
      std::uint64_t all = 0;
      for (auto& c : covers) {
        for (int e = 0; e < universe; ++e) {
          if (bernoulli(rng, 0.3)) c |= std::uint64_t{1} << e;
        }
        if (c == 0) c = std::uint64_t{1} << uniform_int(rng, 0, universe - 1);
        all |= c;
      }
      return Valuation(n, CoverageParams{std::move(covers), universe},
                       share / std::popcount(all));
    }
    case ValuationKind::kBudgetAdditive: {
      std::vector<double> w(n);
      for (double& x : w) x = uniform(rng, 0.05, 1.0);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      const double cap = uniform(rng, 0.3, 0.8) * total;
      return Valuation(n, BudgetAdditiveParams{std::move(w), cap}, share / cap);
    }
    case ValuationKind::kMatroidRankScaled: {
      const int rank = static_cast<int>(uniform_int(rng, 1, n));
      return Valuation(n, MatroidRankParams{rank}, share / rank);
    }
  }
  throw InvalidInput("unsupported valuation kind");
}

}  // namespace

Instance random_instance(int agents, int items, ValuationKind kind, Rng& rng) {
  if (agents < 1 || items < 1) {
    throw InvalidInput("random_instance needs M >= 1 and N >= 1");
  }
  if (items > kMaxItems) throw InvalidInput("random_instance needs N <= 64");
  if (static_cast<int>(kind) < 0 ||
      static_cast<int>(kind) > static_cast<int>(ValuationKind::kMatroidRankScaled)) {
    throw InvalidInput("unsupported valuation kind");
  }
  std::vector<Valuation> vals;
  vals.reserve(agents);
  for (int i = 0; i < agents; ++i) {
    vals.push_back(random_valuation(agents, items, kind, rng));
  }
  return Instance(agents, items, std::move(vals));
}

}  // namespace swp

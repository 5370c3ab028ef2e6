#include "swp/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "parallel.hpp"
#include "swp/errors.hpp"
#include "swp/exact_oracles.hpp"
#include "swp/io.hpp"

namespace swp {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (horizons.empty()) throw ConfigError("horizon grid is empty");
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    if (horizons[k] < 1) throw ConfigError("horizons must be >= 1");
    if (k > 0 && horizons[k] <= horizons[k - 1]) {
      throw ConfigError("horizon grid must be strictly increasing");
    }
  }
  if (seeds < 1) throw ConfigError("seeds must be >= 1");
  if (!(reward_noise >= 0.0)) throw ConfigError("reward noise must be >= 0");
  if (output_dir.empty()) throw ConfigError("output directory is required");
  EtcConfig probe = learner;
  probe.horizon = horizons.front();
  probe.validate();
}

namespace {

json learner_to_json(const ExperimentConfig& cfg) {
  const EtcConfig& l = cfg.learner;
  json out;
  out["plays"] = l.plays ? json(*l.plays) : json("auto");
  out["formula"] = l.formula == MFormula::kAlgorithm ? "algorithm" : "proposition";
  switch (l.eta_mode) {
    case EtaMode::kMeasured:
      out["eta"] = "measured";
      break;
    case EtaMode::kTheoretical:
      out["eta"] = "theoretical";
      break;
    case EtaMode::kFixed:
      out["eta"] = l.eta;
      break;
  }
  out["delta"] = l.delta ? json(*l.delta) : json("theoretical");
  out["C"] = cfg.aggregate_c ? "M" : "1";
  out["alpha"] = l.alpha;
  out["lambda"] = l.offline.lambda;
  out["samples"] = l.offline.samples;
  out["roundings"] = l.offline.roundings;
  return out;
}

void learner_from_json(const json& j, ExperimentConfig& cfg) {
  EtcConfig& l = cfg.learner;
  try {
    if (j.contains("plays")) {
      const auto& p = j.at("plays");
      if (p.is_string()) {
        if (p.get<std::string>() != "auto") throw InvalidInput("plays must be auto or an integer");
        l.plays.reset();
      } else {
        l.plays = p.get<std::int64_t>();
      }
    }
    if (j.contains("formula")) {
      const auto f = j.at("formula").get<std::string>();
      if (f == "algorithm") l.formula = MFormula::kAlgorithm;
      else if (f == "proposition") l.formula = MFormula::kProposition;
      else throw InvalidInput("formula must be algorithm or proposition");
    }
    if (j.contains("eta")) {
      const auto& e = j.at("eta");
      if (e.is_string()) {
        const auto s = e.get<std::string>();
        if (s == "measured") l.eta_mode = EtaMode::kMeasured;
        else if (s == "theoretical") l.eta_mode = EtaMode::kTheoretical;
        else throw InvalidInput("eta must be measured, theoretical or a number");
      } else {
        l.eta_mode = EtaMode::kFixed;
        l.eta = e.get<double>();
      }
    }
    if (j.contains("delta")) {
      const auto& d = j.at("delta");
      if (d.is_string()) {
        if (d.get<std::string>() != "theoretical") throw InvalidInput("delta must be theoretical or a number");
        l.delta.reset();
      } else {
        l.delta = d.get<double>();
      }
    }
    if (j.contains("C")) {
      const auto& c = j.at("C");
      const std::string s = c.is_string() ? c.get<std::string>() : std::to_string(c.get<int>());
      if (s == "M") cfg.aggregate_c = true;
      else if (s == "1") cfg.aggregate_c = false;
      else throw InvalidInput("C must be 1 or M");
    }
    if (j.contains("alpha")) l.alpha = j.at("alpha").get<double>();
    if (j.contains("lambda")) l.offline.lambda = j.at("lambda").get<double>();
    if (j.contains("samples")) l.offline.samples = j.at("samples").get<int>();
    if (j.contains("roundings")) l.offline.roundings = j.at("roundings").get<int>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad learner field: ") + e.what());
  }
}

}  // namespace

json to_json(const ExperimentConfig& cfg) {
  json out;
  out["schema"] = kExperimentSchema;
  std::visit(
      [&](const auto& src) {
        using S = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<S, InstanceFile>) {
          out["instance"] = {{"file", src.path.string()}};
        } else if constexpr (std::is_same_v<S, GeneratedInstance>) {
          out["instance"] = {{"generator",
                              {{"kind", std::string(to_string(src.kind))},
                               {"M", src.agents},
                               {"N", src.items},
                               {"seed", src.seed}}}};
        } else {
          out["instance"] = {{"auction",
                              {{"bidders", src.bidders},
                               {"items", src.items},
                               {"seed", src.seed}}}};
        }
      },
      cfg.instance);
  out["horizons"] = cfg.horizons;
  out["seeds"] = cfg.seeds;
  out["base_seed"] = cfg.base_seed;
  out["reward_noise"] = cfg.reward_noise;
  out["learner"] = learner_to_json(cfg);
  out["output_dir"] = cfg.output_dir.string();
  return out;
}

ExperimentConfig experiment_from_json(const json& j,
                                      const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw InvalidInput("experiment config must be an object");
  if (j.contains("schema") && j.at("schema") != kExperimentSchema) {
    throw InvalidInput("unsupported experiment schema");
  }
  ExperimentConfig cfg;
  try {
    if (!j.contains("instance")) throw InvalidInput("missing field \"instance\"");
    const json& src = j.at("instance");
    if (src.contains("file")) {
      std::filesystem::path p = src.at("file").get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.instance = InstanceFile{p};
    } else if (src.contains("generator")) {
      const json& g = src.at("generator");
      cfg.instance = GeneratedInstance{
          parse_valuation_kind(g.at("kind").get<std::string>()),
          g.at("M").get<int>(), g.at("N").get<int>(),
          g.value("seed", std::uint64_t{0})};
    } else if (src.contains("auction")) {
      const json& a = src.at("auction");
      cfg.instance = AuctionInstance{a.at("bidders").get<int>(),
                                     a.at("items").get<int>(),
                                     a.value("seed", std::uint64_t{0})};
    } else {
      throw InvalidInput("instance must name a file, generator or auction");
    }
    cfg.horizons = j.at("horizons").get<std::vector<std::int64_t>>();
    cfg.seeds = j.value("seeds", 1);
    cfg.base_seed = j.value("base_seed", std::uint64_t{1});
    cfg.reward_noise = j.value("reward_noise", 0.1);
    if (j.contains("learner")) learner_from_json(j.at("learner"), cfg);
    if (j.contains("output_dir")) {
      cfg.output_dir = j.at("output_dir").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad experiment config: ") + e.what());
  }
  return cfg;
}

Instance auction_instance(int bidders, int items, std::uint64_t seed) {
  if (bidders < 1 || items < 1 || items > kMaxItems) {
    throw InvalidInput("auction needs at least one bidder and 1..64 items");
  }
  Rng rng = derive_stream(seed, {0xa0c7});
  const int features = std::min(64, 2 * items + 2);
  std::vector<std::uint64_t> offers(items);
  for (auto& offer : offers) {
    for (int e = 0; e < features; ++e) {
      if (bernoulli(rng, 0.35)) offer |= std::uint64_t{1} << e;
    }
    if (offer == 0) offer = std::uint64_t{1} << uniform_int(rng, 0, features - 1);
  }
  std::vector<Valuation> vals;
  for (int i = 0; i < bidders; ++i) {
    std::uint64_t interest = 0;
    for (int e = 0; e < features; ++e) {
      if (bernoulli(rng, 0.6)) interest |= std::uint64_t{1} << e;
    }
    std::vector<std::uint64_t> covers(items);
    std::uint64_t reachable = 0;
    for (int j = 0; j < items; ++j) {
      covers[j] = offers[j] & interest;
      reachable |= covers[j];
    }
    if (reachable == 0) {
      // A bidder interested in nothing on offer still needs a valid scale.
      covers[0] = offers[0];
      reachable = offers[0];
    }
    const double share = uniform(rng, 0.5, 1.0) / bidders;
    vals.emplace_back(items, CoverageParams{std::move(covers), features},
                      share / std::popcount(reachable));
  }
  return Instance(bidders, items, std::move(vals));
}

ExperimentConfig auction_preset(int bidders, int items, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.instance = AuctionInstance{bidders, items, seed};
  cfg.horizons = {1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14};
  cfg.seeds = 8;
  cfg.base_seed = seed;
  cfg.reward_noise = 0.1;
  cfg.output_dir = "auction_runs";
  return cfg;
}

Instance resolve_instance(const ExperimentConfig& cfg) {
  return std::visit(
      [](const auto& src) -> Instance {
        using S = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<S, InstanceFile>) {
          return load_instance(src.path);
        } else if constexpr (std::is_same_v<S, GeneratedInstance>) {
          Rng rng(src.seed);
          return random_instance(src.agents, src.items, src.kind, rng);
        } else {
          return auction_instance(src.bidders, src.items, src.seed);
        }
      },
      cfg.instance);
}

std::optional<LogLogFit> fit_slope(
    const std::vector<std::pair<double, double>>& points) {
  LogLogFit fit;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [t, r] : points) {
    if (!(r > 0.0) || !(t > 0.0)) {
      ++fit.dropped;
      continue;
    }
    logs.emplace_back(std::log(t), std::log(r));
  }
  fit.used = static_cast<int>(logs.size());
  if (fit.used < 3) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= fit.used;
  my /= fit.used;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : logs) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

json to_json(const SweepSummary& s) {
  json out;
  out["schema"] = kSummarySchema;
  json rows = json::array();
  for (const auto& h : s.horizons) {
    rows.push_back({{"T", h.horizon},
                    {"runs", h.runs},
                    {"mean_regret", h.mean_regret},
                    {"std_error", h.std_error},
                    {"mean_exploration_rounds", h.mean_exploration_rounds},
                    {"mean_plays", h.mean_plays},
                    {"mean_exploitation_gap", h.mean_exploitation_gap},
                    {"max_round_regret", h.max_round_regret},
                    {"clean_runs", h.clean_runs},
                    {"truncated_runs", h.truncated_runs}});
  }
  out["horizons"] = std::move(rows);
  out["negative_points"] = s.negative_points;
  if (s.fit) {
    out["fit"] = {{"slope", s.fit->slope},
                  {"intercept", s.fit->intercept},
                  {"r_squared", s.fit->r_squared},
                  {"used", s.fit->used},
                  {"dropped", s.fit->dropped}};
  } else {
    out["fit"] = nullptr;
  }
  return out;
}

std::filesystem::path trace_path(const std::filesystem::path& dir,
                                 std::int64_t horizon, int seed_index) {
  return dir / ("trace_T" + std::to_string(horizon) + "_s" +
                std::to_string(seed_index) + ".csv");
}

std::uint64_t cell_seed(const ExperimentConfig& cfg, std::int64_t horizon,
                        int seed_index) {
  return derive_seed(cfg.base_seed, {static_cast<std::uint64_t>(horizon),
                                     static_cast<std::uint64_t>(seed_index)});
}

namespace {

bool trace_complete(const std::filesystem::path& path, std::int64_t horizon,
                    std::uint64_t seed) {
  if (!std::filesystem::exists(path)) return false;
  try {
    const TraceHeader h = read_trace_header(path);
    return h.horizon == horizon && h.seed == seed;
  } catch (const IoError&) {
    return false;
  }
}

}  // namespace

SweepSummary run_sweep(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  const Instance inst = resolve_instance(cfg);
  const double opt = brute_force_opt(inst).value;
  std::filesystem::create_directories(cfg.output_dir);
  write_json_file(cfg.output_dir / "config.json", to_json(cfg));

  std::vector<std::pair<std::int64_t, int>> cells;
  for (std::int64_t t : cfg.horizons) {
    for (int s = 0; s < cfg.seeds; ++s) {
      if (!trace_complete(trace_path(cfg.output_dir, t, s), t,
                          cell_seed(cfg, t, s))) {
        cells.emplace_back(t, s);
      }
    }
  }
  const Environment env(inst, cfg.reward_noise);
  detail::parallel_for(cells.size(), jobs, [&](std::size_t k) {
    const auto [t, s] = cells[k];
    EtcConfig learner = cfg.learner;
    learner.horizon = t;
    learner.c = cfg.aggregate_c ? inst.agents() : 1.0;
    const std::uint64_t seed = cell_seed(cfg, t, s);
    const EtcResult result = run_etc(env, learner, opt, seed);
    write_trace_csv(trace_path(cfg.output_dir, t, s),
                    make_trace_header(result, seed), result.trace);
  });

  SweepSummary summary = summarize(cfg);
  write_json_file(cfg.output_dir / "summary.json", to_json(summary));
  return summary;
}

SweepSummary summarize(const ExperimentConfig& cfg) {
  SweepSummary summary;
  std::vector<std::pair<double, double>> points;
  for (std::int64_t t : cfg.horizons) {
    HorizonSummary h;
    h.horizon = t;
    std::vector<double> finals;
    for (int s = 0; s < cfg.seeds; ++s) {
      const auto path = trace_path(cfg.output_dir, t, s);
      if (!std::filesystem::exists(path)) {
        throw IoError("missing trace " + path.string());
      }
      const TraceHeader th = read_trace_header(path);
      finals.push_back(th.final_regret);
      h.mean_exploration_rounds += static_cast<double>(th.phase_boundary);
      h.mean_plays += static_cast<double>(th.plays);
      h.mean_exploitation_gap += th.exploitation_gap;
      h.max_round_regret = s == 0 ? th.max_round_regret
                                  : std::max(h.max_round_regret, th.max_round_regret);
      h.clean_runs += th.clean_event ? 1 : 0;
      h.truncated_runs += th.truncated ? 1 : 0;
    }
    h.runs = static_cast<int>(finals.size());
    double sum = 0.0;
    for (double f : finals) sum += f;
    h.mean_regret = sum / h.runs;
    if (h.runs > 1) {
      double ss = 0.0;
      for (double f : finals) ss += (f - h.mean_regret) * (f - h.mean_regret);
      h.std_error = std::sqrt(ss / (h.runs - 1) / h.runs);
    }
    h.mean_exploration_rounds /= h.runs;
    h.mean_plays /= h.runs;
    h.mean_exploitation_gap /= h.runs;
    if (!(h.mean_regret > 0.0)) ++summary.negative_points;
    points.emplace_back(static_cast<double>(t), h.mean_regret);
    summary.horizons.push_back(h);
  }
  summary.fit = fit_slope(points);
  if (summary.negative_points > 0) {
    std::cerr << "warning: " << summary.negative_points
              << " horizon(s) with nonpositive mean regret excluded from the "
                 "log-log fit\n";
  }
  return summary;
}

int default_jobs() {
  if (const char* env = std::getenv("SWP_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 1;
}

}  // namespace swp

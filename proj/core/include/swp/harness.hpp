#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "swp/bandit.hpp"
#include "swp/valuations.hpp"

namespace swp {

inline constexpr const char* kExperimentSchema = "swp.experiment/1";
inline constexpr const char* kSummarySchema = "swp.summary/1";

// Where a sweep's instance comes from.
struct InstanceFile {
  std::filesystem::path path;
};
struct GeneratedInstance {
  ValuationKind kind = ValuationKind::kCoverage;
  int agents = 2;
  int items = 4;
  std::uint64_t seed = 0;
};
struct AuctionInstance {
  int bidders = 2;
  int items = 4;
  std::uint64_t seed = 0;
};
using InstanceSource =
    std::variant<InstanceFile, GeneratedInstance, AuctionInstance>;

struct ExperimentConfig {
  InstanceSource instance = GeneratedInstance{};
  std::vector<std::int64_t> horizons;  // strictly increasing
  int seeds = 1;
  std::uint64_t base_seed = 1;
  // Learner parameters; `learner.horizon` is overwritten per cell.
  EtcConfig learner;
  // Agent-aggregated model (C = M) instead of C = 1.
  bool aggregate_c = false;
  double reward_noise = 0.1;
  std::filesystem::path output_dir;

  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
// Throws InvalidInput on schema or field errors. Relative instance paths are
// resolved against `base_dir`.
ExperimentConfig experiment_from_json(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir = {});

// Bidders with coverage valuations over item features: item j offers a random
// set of features and bidder i values only the features it is interested in.
// Welfare is the only feedback the environment exposes.
Instance auction_instance(int bidders, int items, std::uint64_t seed);
ExperimentConfig auction_preset(int bidders, int items, std::uint64_t seed);

// Materializes the configured instance. Throws IoError for unreadable files.
Instance resolve_instance(const ExperimentConfig& cfg);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int used = 0;
  int dropped = 0;  // nonpositive points excluded from the fit
};

// Ordinary least squares of log R on log T over points with R > 0. Returns
// nothing when fewer than 3 usable points remain.
std::optional<LogLogFit> fit_slope(
    const std::vector<std::pair<double, double>>& points);

struct HorizonSummary {
  std::int64_t horizon = 0;
  int runs = 0;
  double mean_regret = 0.0;
  double std_error = 0.0;
  double mean_exploration_rounds = 0.0;
  double mean_plays = 0.0;
  double mean_exploitation_gap = 0.0;
  double max_round_regret = 0.0;
  int clean_runs = 0;
  int truncated_runs = 0;
};

struct SweepSummary {
  std::vector<HorizonSummary> horizons;
  std::optional<LogLogFit> fit;
  int negative_points = 0;
};

nlohmann::json to_json(const SweepSummary& s);

// Path of the trace for (horizon, seed index) under `dir`.
std::filesystem::path trace_path(const std::filesystem::path& dir,
                                 std::int64_t horizon, int seed_index);

// Per-cell seed derived from the config's base seed.
std::uint64_t cell_seed(const ExperimentConfig& cfg, std::int64_t horizon,
                        int seed_index);

// Runs every (horizon, seed) cell whose trace is not already on disk, in
// parallel on `jobs` workers, then summarizes from the persisted traces and
// writes summary.json and config.json into the output directory.
SweepSummary run_sweep(const ExperimentConfig& cfg, int jobs = 1);

// Summary computed solely from the traces in `cfg.output_dir`. Throws IoError
// when a trace is missing.
SweepSummary summarize(const ExperimentConfig& cfg);

// Default worker count: $SWP_JOBS when set to a positive integer, else 1.
int default_jobs();

}  // namespace swp

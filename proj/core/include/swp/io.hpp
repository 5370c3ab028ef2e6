#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "swp/bandit.hpp"
#include "swp/continuous_greedy.hpp"
#include "swp/valuations.hpp"

namespace swp {

inline constexpr const char* kInstanceSchema = "swp.instance/1";
inline constexpr const char* kSolveResultSchema = "swp.solve_result/1";
inline constexpr const char* kTraceSchema = "swp.trace/1";

// Instance files are JSON:
//   {"schema": "swp.instance/1", "M": 2, "N": 3, "quotas": [3, 3],
//    "valuations": [{"kind": "modular", "scale": 1, "weights": [...]},
//                   {"kind": "coverage", "scale": 0.25, "universe_size": 4,
//                    "covers": [[0, 1], [1, 2], [3]]},
//                   {"kind": "budget_additive", "scale": 1, "weights": [...],
//                    "cap": 0.5},
//                   {"kind": "matroid_rank_scaled", "scale": 0.2, "rank": 2}]}
nlohmann::json to_json(const Valuation& v);
Valuation valuation_from_json(const nlohmann::json& j, int items);
nlohmann::json to_json(const Instance& inst);
// Throws InvalidInput on schema or field errors.
Instance instance_from_json(const nlohmann::json& j);

// Allocations serialize as an integer array of length N, -1 for unassigned.
nlohmann::json to_json(const Allocation& a);
Allocation allocation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FractionalPoint& y);
nlohmann::json to_json(const CGResult& r);

// Throws IoError when the file cannot be read or written.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

// Metadata stored in a trace file header.
struct TraceHeader {
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::int64_t plays = 0;
  double eta = 0.0;
  double delta = 0.0;
  double c = 1.0;
  std::int64_t phase_boundary = 0;
  double alpha = 0.0;
  double opt_value = 0.0;
  bool truncated = false;
  bool clean_event = true;
  double exploitation_gap = 0.0;
  double radius = 0.0;
  double final_regret = 0.0;
  double max_round_regret = 0.0;
};

TraceHeader make_trace_header(const EtcResult& r, std::uint64_t seed);

// CSV: a "# key=value" metadata block, then "round,reward,cum_regret,phase"
// rows with round numbers starting at 1. Reals use 17 significant digits.
std::string format_trace_csv(const TraceHeader& header, const RegretTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const TraceHeader& header,
                     const RegretTrace& trace);
// Reads only the metadata block. Throws IoError when missing or malformed.
TraceHeader read_trace_header(const std::filesystem::path& path);

// "%.17g".
std::string format_real(double x);

}  // namespace swp

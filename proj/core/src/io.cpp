#include "swp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "swp/errors.hpp"

namespace swp {

using nlohmann::json;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw InvalidInput(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json to_json(const Valuation& v) {
  json out;
  out["kind"] = std::string(to_string(v.kind()));
  out["scale"] = v.scale();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ModularParams>) {
          out["weights"] = p.weights;
        } else if constexpr (std::is_same_v<P, CoverageParams>) {
          out["universe_size"] = p.universe_size;
          json covers = json::array();
          for (std::uint64_t c : p.covers) {
            json elems = json::array();
            for (int e = 0; e < 64; ++e) {
              if ((c >> e) & 1U) elems.push_back(e);
            }
            covers.push_back(std::move(elems));
          }
          out["covers"] = std::move(covers);
        } else if constexpr (std::is_same_v<P, BudgetAdditiveParams>) {
          out["weights"] = p.weights;
          out["cap"] = p.cap;
        } else {
          out["rank"] = p.rank;
        }
      },
      v.params());
  return out;
}

Valuation valuation_from_json(const json& j, int items) {
  const auto kind = parse_valuation_kind(field<std::string>(j, "kind"));
  const double scale = j.contains("scale") ? field<double>(j, "scale") : 1.0;
  switch (kind) {
    case ValuationKind::kModular:
      return Valuation(items,
                       ModularParams{field<std::vector<double>>(j, "weights")},
                       scale);
    case ValuationKind::kCoverage: {
      CoverageParams p;
      p.universe_size = field<int>(j, "universe_size");
      for (const auto& elems : field<std::vector<std::vector<int>>>(j, "covers")) {
        std::uint64_t mask = 0;
        for (int e : elems) {
          if (e < 0 || e >= 64) throw InvalidInput("cover element out of range");
          mask |= std::uint64_t{1} << e;
        }
        p.covers.push_back(mask);
      }
      return Valuation(items, std::move(p), scale);
    }
    case ValuationKind::kBudgetAdditive:
      return Valuation(items,
                       BudgetAdditiveParams{field<std::vector<double>>(j, "weights"),
                                            field<double>(j, "cap")},
                       scale);
    case ValuationKind::kMatroidRankScaled:
      return Valuation(items, MatroidRankParams{field<int>(j, "rank")}, scale);
  }
  throw InvalidInput("unsupported valuation kind");
}

json to_json(const Instance& inst) {
  json out;
  out["schema"] = kInstanceSchema;
  out["M"] = inst.agents();
  out["N"] = inst.items();
  out["quotas"] = inst.quotas();
  json vals = json::array();
  for (const auto& v : inst.valuations()) vals.push_back(to_json(v));
  out["valuations"] = std::move(vals);
  return out;
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kInstanceSchema) {
    throw InvalidInput("unsupported instance schema");
  }
  const int m = field<int>(j, "M");
  const int n = field<int>(j, "N");
  if (n < 1 || n > kMaxItems) throw InvalidInput("N must be in [1, 64]");
  std::vector<Valuation> vals;
  if (!j.contains("valuations") || !j.at("valuations").is_array()) {
    throw InvalidInput("missing field \"valuations\"");
  }
  for (const auto& v : j.at("valuations")) vals.push_back(valuation_from_json(v, n));
  std::vector<int> quotas;
  if (j.contains("quotas")) quotas = field<std::vector<int>>(j, "quotas");
  return Instance(m, n, std::move(vals), std::move(quotas));
}

json to_json(const Allocation& a) { return a.assignment(); }

Allocation allocation_from_json(const json& j) {
  try {
    return Allocation(j.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad allocation: ") + e.what());
  }
}

json to_json(const FractionalPoint& y) {
  json rows = json::array();
  for (int i = 0; i < y.agents(); ++i) {
    json row = json::array();
    for (int j = 0; j < y.items(); ++j) row.push_back(y(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const CGResult& r) {
  json out;
  out["schema"] = kSolveResultSchema;
  out["y_final"] = to_json(r.y_final);
  out["allocation"] = to_json(r.allocation);
  out["welfare"] = r.welfare;
  out["selected_value"] = r.selected_value;
  out["F_estimate"] = r.F_estimate;
  out["oracle_calls"] = r.oracle_calls;
  out["selection_calls"] = r.selection_calls;
  out["eta_measured"] = r.eta_measured;
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  write_json_file(path, to_json(inst));
}

TraceHeader make_trace_header(const EtcResult& r, std::uint64_t seed) {
  TraceHeader h;
  h.horizon = r.trace.horizon();
  h.seed = seed;
  h.plays = r.plays;
  h.eta = r.eta;
  h.delta = r.delta;
  h.c = r.c;
  h.phase_boundary = r.trace.phase_boundary;
  h.alpha = r.trace.alpha;
  h.opt_value = r.trace.opt_value;
  h.truncated = r.trace.truncated;
  h.clean_event = r.clean_event;
  h.exploitation_gap = r.exploitation_gap;
  h.radius = r.radius;
  h.final_regret = r.trace.cumulative_alpha_regret.empty()
                       ? 0.0
                       : r.trace.cumulative_alpha_regret.back();
  const double benchmark = r.trace.alpha * r.trace.opt_value;
  for (double reward : r.trace.per_round_reward) {
    h.max_round_regret = std::max(h.max_round_regret, benchmark - reward);
  }
  return h;
}

std::string format_trace_csv(const TraceHeader& h, const RegretTrace& trace) {
  std::ostringstream os;
  os << "# schema=" << kTraceSchema << '\n'
     << "# horizon=" << h.horizon << '\n'
     << "# seed=" << h.seed << '\n'
     << "# plays=" << h.plays << '\n'
     << "# eta=" << format_real(h.eta) << '\n'
     << "# delta=" << format_real(h.delta) << '\n'
     << "# C=" << format_real(h.c) << '\n'
     << "# phase_boundary=" << h.phase_boundary << '\n'
     << "# alpha=" << format_real(h.alpha) << '\n'
     << "# opt_value=" << format_real(h.opt_value) << '\n'
     << "# truncated=" << (h.truncated ? 1 : 0) << '\n'
     << "# clean_event=" << (h.clean_event ? 1 : 0) << '\n'
     << "# exploitation_gap=" << format_real(h.exploitation_gap) << '\n'
     << "# radius=" << format_real(h.radius) << '\n'
     << "# final_regret=" << format_real(h.final_regret) << '\n'
     << "# max_round_regret=" << format_real(h.max_round_regret) << '\n'
     << "round,reward,cum_regret,phase\n";
  for (std::int64_t t = 0; t < trace.horizon(); ++t) {
    os << (t + 1) << ',' << format_real(trace.per_round_reward[t]) << ','
       << format_real(trace.cumulative_alpha_regret[t]) << ','
       << (t < trace.phase_boundary ? "explore" : "exploit") << '\n';
  }
  return os.str();
}

void write_trace_csv(const std::filesystem::path& path, const TraceHeader& header,
                     const RegretTrace& trace) {
  // Write to a temporary name first so an interrupted sweep never leaves a
  // truncated trace that a resumed run would trust.
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << format_trace_csv(header, trace);
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

TraceHeader read_trace_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  TraceHeader h;
  bool schema_ok = false;
  std::string line;
  try {
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "schema") schema_ok = value == kTraceSchema;
      else if (key == "horizon") h.horizon = std::stoll(value);
      else if (key == "seed") h.seed = std::stoull(value);
      else if (key == "plays") h.plays = std::stoll(value);
      else if (key == "eta") h.eta = std::stod(value);
      else if (key == "delta") h.delta = std::stod(value);
      else if (key == "C") h.c = std::stod(value);
      else if (key == "phase_boundary") h.phase_boundary = std::stoll(value);
      else if (key == "alpha") h.alpha = std::stod(value);
      else if (key == "opt_value") h.opt_value = std::stod(value);
      else if (key == "truncated") h.truncated = value == "1";
      else if (key == "clean_event") h.clean_event = value == "1";
      else if (key == "exploitation_gap") h.exploitation_gap = std::stod(value);
      else if (key == "radius") h.radius = std::stod(value);
      else if (key == "final_regret") h.final_regret = std::stod(value);
      else if (key == "max_round_regret") h.max_round_regret = std::stod(value);
    }
  } catch (const std::exception& e) {
    throw IoError("malformed trace header in " + path.string() + ": " + e.what());
  }
  if (!schema_ok) throw IoError("not a trace file: " + path.string());
  return h;
}

}  // namespace swp

// swp: command-line front end for the submodular welfare library.
//
// Usage:
//   swp generate --kind coverage --agents 2 --items 4 --seed 7 --out inst.json
//   swp solve    --instance inst.json --lambda 0.0625 --oracle noisy:0.01 --out r.json
//   swp verify   --instance inst.json
//   swp simulate --instance inst.json --T 4096 --m auto --eta measured --out trace.csv
//   swp sweep    --config sweep.json --out runs/ --jobs 4
//   swp report   --dir runs/

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swp/bandit.hpp"
#include "swp/continuous_greedy.hpp"
#include "swp/errors.hpp"
#include "swp/exact_oracles.hpp"
#include "swp/harness.hpp"
#include "swp/io.hpp"

namespace {

using namespace swp;

void parse_oracle(const std::string& spec, CGConfig& cfg) {
  if (spec == "exact") {
    cfg.oracle_mode = OracleMode::kExact;
    return;
  }
  const std::string prefix = "noisy:";
  if (spec.rfind(prefix, 0) == 0) {
    cfg.oracle_mode = OracleMode::kNoisy;
    try {
      cfg.noise_epsilon = std::stod(spec.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ConfigError("bad noise level in --oracle " + spec);
    }
    return;
  }
  throw ConfigError("--oracle must be exact or noisy:<eps>");
}

struct SolveArgs {
  std::string instance;
  double lambda = 1.0 / 16.0;
  int samples = 0;
  int roundings = 16;
  int threads = 1;
  std::string oracle = "exact";
  std::uint64_t seed = 1;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  CGConfig cfg;
  cfg.lambda = a.lambda;
  cfg.samples = a.samples;
  cfg.roundings = a.roundings;
  cfg.threads = a.threads;
  cfg.record_queries = true;
  parse_oracle(a.oracle, cfg);
  const CGResult r = solve(inst, cfg, a.seed);
  const auto j = to_json(r);
  if (a.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(a.out, j);
    std::cout << "welfare " << format_real(r.welfare) << "  oracle_calls "
              << r.oracle_calls << "  eta_measured " << r.eta_measured << '\n';
  }
  return 0;
}

int run_verify(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  CGConfig cfg;
  cfg.lambda = a.lambda;
  cfg.samples = a.samples;
  cfg.threads = a.threads;
  parse_oracle(a.oracle, cfg);
  const OptCertificate opt = brute_force_opt(inst, a.threads);
  const double greedy = welfare(greedy_half(inst), inst);
  const double cg = solve(inst, cfg, a.seed).welfare;
  auto ratio = [&](double v) { return opt.value > 0 ? v / opt.value : 1.0; };
  std::cout << std::setprecision(10);
  std::cout << "brute_force_opt    " << opt.value << "  (searched "
            << opt.search_space << " assignments)\n";
  std::cout << "greedy_half        " << greedy << "  ratio " << ratio(greedy) << '\n';
  std::cout << "continuous_greedy  " << cg << "  ratio " << ratio(cg) << '\n';
  return 0;
}

struct SimulateArgs {
  std::string instance;
  std::int64_t horizon = 1000;
  std::string m = "auto";
  std::string eta = "measured";
  std::string delta = "theoretical";
  std::string c = "1";
  std::string formula = "algorithm";
  double noise = 0.1;
  double lambda = 1.0 / 16.0;
  int samples = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const Instance inst = load_instance(a.instance);
  EtcConfig cfg;
  cfg.horizon = a.horizon;
  if (a.m != "auto") cfg.plays = std::stoll(a.m);
  if (a.formula == "proposition") {
    cfg.formula = MFormula::kProposition;
  } else if (a.formula != "algorithm") {
    throw ConfigError("--formula must be algorithm or proposition");
  }
  if (a.eta == "measured") {
    cfg.eta_mode = EtaMode::kMeasured;
  } else if (a.eta == "theoretical") {
    cfg.eta_mode = EtaMode::kTheoretical;
  } else {
    cfg.eta_mode = EtaMode::kFixed;
    cfg.eta = std::stod(a.eta);
  }
  if (a.delta != "theoretical") cfg.delta = std::stod(a.delta);
  if (a.c == "M") {
    cfg.c = inst.agents();
  } else if (a.c == "1") {
    cfg.c = 1.0;
  } else {
    throw ConfigError("--C must be 1 or M");
  }
  cfg.offline.lambda = a.lambda;
  cfg.offline.samples = a.samples;
  const double opt = brute_force_opt(inst).value;
  const Environment env(inst, a.noise);
  const EtcResult r = run_etc(env, cfg, opt, a.seed);
  const TraceHeader h = make_trace_header(r, a.seed);
  if (a.out.empty()) {
    std::cout << format_trace_csv(h, r.trace);
  } else {
    write_trace_csv(a.out, h, r.trace);
  }
  std::cerr << "m " << r.plays << "  eta " << r.eta << "  exploration rounds "
            << r.trace.phase_boundary << "  alpha-regret "
            << format_real(alpha_regret(r.trace))
            << (r.trace.truncated ? "  [truncated]" : "") << '\n';
  return 0;
}

void print_summary(const SweepSummary& s) {
  std::cout << std::left << std::setw(10) << "T" << std::setw(7) << "runs"
            << std::setw(16) << "mean_regret" << std::setw(14) << "std_error"
            << std::setw(12) << "explore" << std::setw(14) << "gap"
            << "clean\n";
  for (const auto& h : s.horizons) {
    std::cout << std::left << std::setw(10) << h.horizon << std::setw(7) << h.runs
              << std::setw(16) << std::setprecision(8) << h.mean_regret
              << std::setw(14) << std::setprecision(5) << h.std_error
              << std::setw(12) << std::setprecision(6) << h.mean_exploration_rounds
              << std::setw(14) << std::setprecision(5) << h.mean_exploitation_gap
              << h.clean_runs << '/' << h.runs << '\n';
  }
  if (s.fit) {
    std::cout << "log-log slope " << std::setprecision(6) << s.fit->slope
              << "  intercept " << s.fit->intercept << "  R^2 "
              << s.fit->r_squared << "  (" << s.fit->used << " points, "
              << s.fit->dropped << " dropped)\n";
  } else {
    std::cout << "log-log slope: absent (fewer than 3 positive points)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Submodular welfare allocation: offline solver and bandit learner"};
  app.require_subcommand(1);

  std::string gen_kind = "coverage", gen_out;
  int gen_agents = 2, gen_items = 4;
  std::uint64_t gen_seed = 1;
  bool gen_auction = false;
  auto* gen = app.add_subcommand("generate", "Write a random instance file");
  gen->add_option("--kind", gen_kind,
                  "modular | coverage | budget_additive | matroid_rank_scaled");
  gen->add_option("--agents,-M", gen_agents)->check(CLI::PositiveNumber);
  gen->add_option("--items,-N", gen_items)->check(CLI::Range(1, 64));
  gen->add_option("--seed", gen_seed);
  gen->add_flag("--auction", gen_auction, "Bidder/feature auction instance");
  gen->add_option("--out", gen_out)->required();

  SolveArgs solve_args;
  auto add_solver_options = [&](CLI::App* cmd) {
    cmd->add_option("--instance", solve_args.instance)->required()->check(CLI::ExistingFile);
    cmd->add_option("--lambda", solve_args.lambda, "Step size (1/lambda integer)");
    cmd->add_option("--samples", solve_args.samples, "Samples per marginal (0: 64*M*N)");
    cmd->add_option("--oracle", solve_args.oracle, "exact | noisy:<eps>");
    cmd->add_option("--seed", solve_args.seed);
    cmd->add_option("--threads", solve_args.threads)->check(CLI::PositiveNumber);
  };
  auto* solve_cmd = app.add_subcommand("solve", "Run continuous greedy on an instance");
  add_solver_options(solve_cmd);
  solve_cmd->add_option("--roundings", solve_args.roundings)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve_args.out, "Result file (JSON)");
  auto* verify_cmd = app.add_subcommand(
      "verify", "Compare brute force, greedy and continuous greedy welfare");
  add_solver_options(verify_cmd);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one explore-then-commit trace");
  sim_cmd->add_option("--instance", sim.instance)->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--T", sim.horizon)->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--m", sim.m, "auto | plays per action");
  sim_cmd->add_option("--eta", sim.eta, "measured | theoretical | <number>");
  sim_cmd->add_option("--delta", sim.delta, "theoretical | <number>");
  sim_cmd->add_option("--C", sim.c, "1 | M");
  sim_cmd->add_option("--formula", sim.formula, "algorithm | proposition");
  sim_cmd->add_option("--noise", sim.noise, "Reward noise half-width");
  sim_cmd->add_option("--lambda", sim.lambda);
  sim_cmd->add_option("--samples", sim.samples);
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--out", sim.out, "Trace CSV");

  std::string sweep_config, sweep_out;
  int sweep_jobs = default_jobs();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a horizon x seed sweep");
  sweep_cmd->add_option("--config", sweep_config)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_out, "Output directory (overrides config)");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Parallel cells (default $SWP_JOBS or 1)")
      ->check(CLI::PositiveNumber);

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Summarize a sweep directory");
  report_cmd->add_option("--dir", report_dir)->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Instance inst =
          gen_auction ? auction_instance(gen_agents, gen_items, gen_seed)
                      : [&] {
                          Rng rng(gen_seed);
                          return random_instance(gen_agents, gen_items,
                                                 parse_valuation_kind(gen_kind), rng);
                        }();
      save_instance(gen_out, inst);
      return 0;
    }
    if (*solve_cmd) return run_solve(solve_args);
    if (*verify_cmd) return run_verify(solve_args);
    if (*sim_cmd) return run_simulate(sim);
    if (*sweep_cmd) {
      const std::filesystem::path path = sweep_config;
      ExperimentConfig cfg =
          experiment_from_json(read_json_file(path), path.parent_path());
      if (!sweep_out.empty()) cfg.output_dir = sweep_out;
      print_summary(run_sweep(cfg, sweep_jobs));
      return 0;
    }
    if (*report_cmd) {
      const std::filesystem::path dir = report_dir;
      ExperimentConfig cfg = experiment_from_json(read_json_file(dir / "config.json"));
      cfg.output_dir = dir;
      const SweepSummary s = summarize(cfg);
      write_json_file(dir / "summary.json", to_json(s));
      print_summary(s);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// Copyright 2026 The wpcn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line harness over the shared-library C interface: single solves,
// parameter sweeps, brute-force cross-validation, and Monte Carlo
// channel-hardening reports. JSON config in, CSV out.
//
// Exit codes: 0 success, 1 validation failure (flagged gaps or an
// unconverged solve), 2 configuration error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpcn/wpcn.h"

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  wpcn_system_params params{};
  bool theta_explicit = false;
  wpcn_solver_config solver{};
  wpcn_grid_spec grid{};
  bool has_sweep = false;
  std::string sweep_variable;
  std::vector<double> sweep_values;
  std::string scheme = "joint";
  int variant = WPCN_VARIANT_BOX_TAU_MAX;
  std::uint64_t seed = 1;
  std::string output_path;
};

struct Flags {
  std::string config_path;
  std::string out_path;
  std::string trace_path;
  std::string scheme;
  std::string variant;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool kbj = false;
  bool emit_plot_data = false;
};

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void check_rc(int rc, const std::string& what) {
  if (rc != WPCN_OK) {
    throw ConfigError(what + ": " + wpcn_rc_message(rc));
  }
}

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw ConfigError("missing required key '" + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw ConfigError("key '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

double require_positive(const json& j, const std::string& key) {
  const double v = require_number(j, key);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "' must be positive");
  }
  return v;
}

std::uint32_t require_count(const json& j, const std::string& key) {
  const double v = require_positive(j, key);
  if (v != std::floor(v) || v > 4.0e9) {
    throw ConfigError("key '" + key + "' must be a positive integer");
  }
  return static_cast<std::uint32_t>(v);
}

int parse_variant(const std::string& name) {
  if (name == "box_tau_max") return WPCN_VARIANT_BOX_TAU_MAX;
  if (name == "exact_harvest_cap") return WPCN_VARIANT_EXACT_HARVEST_CAP;
  throw ConfigError("key 'variant' must be box_tau_max or exact_harvest_cap");
}

const char* variant_name(int variant) {
  return variant == WPCN_VARIANT_EXACT_HARVEST_CAP ? "exact_harvest_cap"
                                                   : "box_tau_max";
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  cfg.params.bandwidth_hz = require_positive(j, "bandwidth_hz");
  cfg.params.slot_s = require_positive(j, "slot_s");
  cfg.params.eta = require_positive(j, "eta");
  if (cfg.params.eta > 1.0) throw ConfigError("key 'eta' must be <= 1");
  cfg.params.alpha = require_positive(j, "alpha");
  cfg.theta_explicit = j.contains("theta");
  cfg.params.theta =
      cfg.theta_explicit ? require_positive(j, "theta") : cfg.params.alpha;
  cfg.params.noise_power_w = require_positive(j, "noise_power");
  cfg.params.n_t = require_count(j, "n_t");
  cfg.params.p0_w = require_positive(j, "p0_w");
  cfg.params.p1_max_w = require_positive(j, "p1_max_w");
  cfg.params.p2_max_w = require_positive(j, "p2_max_w");
  const double r_min = require_number(j, "r_min_bps");
  if (!(r_min >= 0.0) || !std::isfinite(r_min)) {
    throw ConfigError("key 'r_min_bps' must be >= 0");
  }
  cfg.params.r_min_bps = r_min;

  check_rc(wpcn_solver_config_defaults(&cfg.params, &cfg.solver),
           "solver defaults");
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (!s.is_object()) throw ConfigError("key 'solver' must be an object");
    if (s.contains("epsilon_bits")) {
      cfg.solver.epsilon_bits = require_positive(s, "epsilon_bits");
    }
    if (s.contains("steps")) {
      const json& st = s.at("steps");
      if (!st.is_object()) {
        throw ConfigError("key 'solver.steps' must be an object");
      }
      if (st.contains("mu")) cfg.solver.step_mu = require_positive(st, "mu");
      if (st.contains("vartheta")) {
        cfg.solver.step_vartheta = require_positive(st, "vartheta");
      }
      if (st.contains("nu")) cfg.solver.step_nu = require_positive(st, "nu");
      if (st.contains("upsilon")) {
        cfg.solver.step_upsilon = require_positive(st, "upsilon");
      }
    }
    if (s.contains("max_outer")) {
      cfg.solver.max_outer = require_count(s, "max_outer");
    }
    if (s.contains("max_dual_iters")) {
      cfg.solver.max_dual_iters = require_count(s, "max_dual_iters");
    }
    if (s.contains("bisection_tol_s")) {
      cfg.solver.bisection_tol_s = require_positive(s, "bisection_tol_s");
    }
    if (s.contains("init_fraction")) {
      const double f = require_positive(s, "init_fraction");
      if (f >= 1.0) {
        throw ConfigError("key 'solver.init_fraction' must lie in (0, 1)");
      }
      cfg.solver.init_fraction = f;
    }
    if (s.contains("paper_eq18_literal")) {
      if (!s.at("paper_eq18_literal").is_boolean()) {
        throw ConfigError("key 'solver.paper_eq18_literal' must be a boolean");
      }
      cfg.solver.paper_eq18_literal =
          s.at("paper_eq18_literal").get<bool>() ? 1 : 0;
    }
  }

  check_rc(wpcn_grid_spec_defaults(&cfg.grid), "grid defaults");
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("key 'grid' must be an object");
    if (g.contains("n_p")) cfg.grid.n_p = require_count(g, "n_p");
    if (g.contains("n_tau")) cfg.grid.n_tau = require_count(g, "n_tau");
    if (g.contains("refine_levels")) {
      const double v = require_number(g, "refine_levels");
      if (v < 0.0 || v != std::floor(v)) {
        throw ConfigError("key 'grid.refine_levels' must be a count");
      }
      cfg.grid.refine_levels = static_cast<std::uint32_t>(v);
    }
    if (g.contains("refine_factor")) {
      const double v = require_positive(g, "refine_factor");
      if (v >= 1.0) {
        throw ConfigError("key 'grid.refine_factor' must lie in (0, 1)");
      }
      cfg.grid.refine_factor = v;
    }
  }

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    if (!s.is_object()) throw ConfigError("key 'sweep' must be an object");
    if (!s.contains("variable") || !s.at("variable").is_string()) {
      throw ConfigError("key 'sweep.variable' must be a string");
    }
    cfg.sweep_variable = s.at("variable").get<std::string>();
    if (cfg.sweep_variable != "alpha" && cfg.sweep_variable != "n_t") {
      throw ConfigError("key 'sweep.variable' must be alpha or n_t");
    }
    if (!s.contains("values") || !s.at("values").is_array() ||
        s.at("values").empty()) {
      throw ConfigError("key 'sweep.values' must be a non-empty array");
    }
    double prev = 0.0;
    for (const auto& v : s.at("values")) {
      if (!v.is_number()) {
        throw ConfigError("key 'sweep.values' must contain numbers");
      }
      const double x = v.get<double>();
      if (!(x > 0.0)) {
        throw ConfigError("key 'sweep.values' must be positive");
      }
      if (!(x > prev)) {
        throw ConfigError("key 'sweep.values' must be strictly increasing");
      }
      if (cfg.sweep_variable == "n_t" && x != std::floor(x)) {
        throw ConfigError("key 'sweep.values' must be integers for n_t");
      }
      cfg.sweep_values.push_back(x);
      prev = x;
    }
    cfg.has_sweep = true;
  }

  if (j.contains("scheme")) {
    if (!j.at("scheme").is_string()) {
      throw ConfigError("key 'scheme' must be a string");
    }
    cfg.scheme = j.at("scheme").get<std::string>();
    if (cfg.scheme != "joint" && cfg.scheme != "duration_only" &&
        cfg.scheme != "both") {
      throw ConfigError("key 'scheme' must be joint, duration_only or both");
    }
  }
  if (j.contains("variant")) {
    if (!j.at("variant").is_string()) {
      throw ConfigError("key 'variant' must be a string");
    }
    cfg.variant = parse_variant(j.at("variant").get<std::string>());
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer()) {
      throw ConfigError("key 'seed' must be an integer");
    }
    if (!s.is_number_unsigned() && s.get<std::int64_t>() < 0) {
      throw ConfigError("key 'seed' must be >= 0");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) {
      throw ConfigError("key 'output_path' must be a string");
    }
    cfg.output_path = j.at("output_path").get<std::string>();
  }
  return cfg;
}

void apply_flags(RunConfig& cfg, const Flags& flags) {
  if (!flags.scheme.empty()) {
    if (flags.scheme != "joint" && flags.scheme != "duration_only" &&
        flags.scheme != "both") {
      throw ConfigError("--scheme must be joint, duration_only or both");
    }
    cfg.scheme = flags.scheme;
  }
  if (!flags.variant.empty()) cfg.variant = parse_variant(flags.variant);
  if (flags.seed_set) cfg.seed = flags.seed;
  if (!flags.out_path.empty()) cfg.output_path = flags.out_path;
}

constexpr const char* kCsvHeader =
    "alpha,theta,n_t,scheme,variant,p_star_w,tau_star_s,ee_bits_per_joule,"
    "rate_bps,feasible,outer_iterations,status";

const char* status_name(int status) {
  switch (status) {
    case WPCN_SOLVE_OPTIMAL:
      return "optimal";
    case WPCN_SOLVE_INFEASIBLE:
      return "infeasible";
    default:
      return "max_iterations";
  }
}

struct SolveRow {
  std::string csv;
  int status = WPCN_SOLVE_OPTIMAL;
  double ee = 0.0;
  std::vector<std::pair<double, double>> trace;
};

// Runs one scheme at one parameter point and formats the CSV row.
SolveRow run_scheme(const wpcn_system_params& params,
                    const wpcn_solver_config& solver, const std::string& scheme,
                    int variant, bool kbj) {
  wpcn_solution* sol = nullptr;
  const int rc = scheme == "joint"
                     ? wpcn_solve_joint(&params, &solver, &sol)
                     : wpcn_solve_duration_only(&params, &solver, &sol);
  check_rc(rc, "solve (" + scheme + ")");

  SolveRow row;
  double p = 0.0, tau = 0.0, ee = 0.0, rate = 0.0;
  std::uint32_t iters = 0;
  wpcn_solution_status(sol, &row.status);
  wpcn_solution_allocation(sol, &p, &tau);
  wpcn_solution_ee(sol, &ee);
  wpcn_solution_rate(sol, &rate);
  wpcn_solution_outer_iterations(sol, &iters);
  size_t n_trace = 0;
  wpcn_solution_trace_size(sol, &n_trace);
  for (size_t i = 0; i < n_trace; ++i) {
    double q = 0.0, f = 0.0;
    wpcn_solution_trace_entry(sol, i, &q, &f);
    row.trace.emplace_back(q, f);
  }
  wpcn_solution_free(sol);

  bool feasible = false;
  if (row.status != WPCN_SOLVE_INFEASIBLE) {
    int feas = WPCN_VIOLATES_TAU;
    wpcn_check_feasible(&params, p, tau, variant, &feas);
    feasible = feas == WPCN_FEASIBLE;
  }
  row.ee = ee;

  std::ostringstream out;
  out << g9(params.alpha) << ',' << g9(params.theta) << ',' << params.n_t
      << ',' << scheme << ',' << variant_name(variant) << ',' << g9(p) << ','
      << g9(tau) << ',' << g9(kbj ? ee * 1e-3 : ee) << ',' << g9(rate) << ','
      << (feasible ? "true" : "false") << ',' << iters << ','
      << status_name(row.status);
  row.csv = out.str();
  return row;
}

wpcn_system_params point_params(const RunConfig& cfg, double value) {
  wpcn_system_params p = cfg.params;
  if (cfg.sweep_variable == "alpha") {
    p.alpha = value;
    if (!cfg.theta_explicit) p.theta = value;
  } else {
    p.n_t = static_cast<std::uint32_t>(value);
  }
  return p;
}

std::vector<std::string> selected_schemes(const RunConfig& cfg) {
  if (cfg.scheme == "both") return {"joint", "duration_only"};
  return {cfg.scheme};
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << body;
}

class TraceWriter {
 public:
  void add(const wpcn_system_params& params, const std::string& scheme,
           const std::vector<std::pair<double, double>>& trace) {
    for (size_t i = 0; i < trace.size(); ++i) {
      body_ << g9(params.alpha) << ',' << g9(params.theta) << ',' << params.n_t
            << ',' << scheme << ',' << i + 1 << ',' << g9(trace[i].first)
            << ',' << g9(trace[i].second) << '\n';
    }
  }
  void write(const std::string& path) const {
    write_file(path,
               "alpha,theta,n_t,scheme,outer_iteration,q_bits_per_joule,"
               "f_bits\n" +
                   body_.str());
  }

 private:
  std::ostringstream body_;
};

int cmd_solve(const RunConfig& cfg, const Flags& flags) {
  TraceWriter traces;
  bool unconverged = false;
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& scheme : selected_schemes(cfg)) {
    const SolveRow row =
        run_scheme(cfg.params, cfg.solver, scheme, cfg.variant, flags.kbj);
    out += row.csv + "\n";
    traces.add(cfg.params, scheme, row.trace);
    if (row.status == WPCN_SOLVE_MAX_ITERATIONS) unconverged = true;
  }
  std::fputs(out.c_str(), stdout);
  if (!cfg.output_path.empty()) write_file(cfg.output_path, out);
  if (!flags.trace_path.empty()) traces.write(flags.trace_path);
  return unconverged ? 1 : 0;
}

int cmd_sweep(const RunConfig& cfg, const Flags& flags) {
  if (!cfg.has_sweep) {
    throw ConfigError("missing required key 'sweep' for the sweep command");
  }
  if (cfg.output_path.empty()) {
    throw ConfigError("missing required key 'output_path' (or --out)");
  }
  TraceWriter traces;
  std::ostringstream csv, plot;
  csv << kCsvHeader << '\n';
  plot << "figure,x_name,x,series,ee_bits_per_joule\n";
  const std::string figure =
      cfg.sweep_variable == "alpha" ? "ee_vs_alpha" : "ee_vs_n_t";
  bool unconverged = false;
  for (double value : cfg.sweep_values) {
    const wpcn_system_params params = point_params(cfg, value);
    for (const auto& scheme : selected_schemes(cfg)) {
      const SolveRow row =
          run_scheme(params, cfg.solver, scheme, cfg.variant, flags.kbj);
      csv << row.csv << '\n';
      plot << figure << ',' << cfg.sweep_variable << ',' << g9(value) << ','
           << scheme << ',' << g9(flags.kbj ? row.ee * 1e-3 : row.ee) << '\n';
      traces.add(params, scheme, row.trace);
      if (row.status == WPCN_SOLVE_MAX_ITERATIONS) unconverged = true;
    }
  }
  write_file(cfg.output_path, csv.str());
  if (flags.emit_plot_data) write_file(cfg.output_path + ".plot.csv", plot.str());
  if (!flags.trace_path.empty()) traces.write(flags.trace_path);
  return unconverged ? 1 : 0;
}

int cmd_validate(const RunConfig& cfg, const Flags& flags) {
  (void)flags;
  std::vector<double> values = cfg.sweep_values;
  if (!cfg.has_sweep) values = {0.0};
  int flagged = 0;
  int checked = 0;
  std::ostringstream out;
  for (double value : values) {
    const wpcn_system_params params =
        cfg.has_sweep ? point_params(cfg, value) : cfg.params;
    wpcn_solution* sol = nullptr;
    check_rc(wpcn_solve_joint(&params, &cfg.solver, &sol), "solve_joint");
    double ee_solver = 0.0;
    int status = WPCN_SOLVE_INFEASIBLE;
    wpcn_solution_ee(sol, &ee_solver);
    wpcn_solution_status(sol, &status);
    wpcn_solution_free(sol);

    wpcn_solution* ref = nullptr;
    check_rc(wpcn_grid_search(&params, cfg.variant, &cfg.grid, &ref),
             "grid_search");
    double ee_oracle = 0.0;
    int ref_status = WPCN_SOLVE_INFEASIBLE;
    wpcn_solution_ee(ref, &ee_oracle);
    wpcn_solution_status(ref, &ref_status);
    wpcn_solution_free(ref);

    const bool solver_infeasible = status == WPCN_SOLVE_INFEASIBLE;
    const bool oracle_infeasible = ref_status == WPCN_SOLVE_INFEASIBLE;
    double gap = 0.0;
    bool flag = false;
    if (solver_infeasible != oracle_infeasible) {
      flag = true;
      gap = 1.0;
    } else if (!oracle_infeasible && ee_oracle > 0.0) {
      gap = std::fabs(ee_solver - ee_oracle) / ee_oracle;
      flag = gap > 0.01;
    }
    ++checked;
    if (flag) ++flagged;
    out << "point alpha=" << g9(params.alpha) << " theta=" << g9(params.theta)
        << " n_t=" << params.n_t << " solver_ee=" << g9(ee_solver)
        << " oracle_ee=" << g9(ee_oracle) << " rel_gap=" << g9(gap) << " "
        << (flag ? "FLAGGED"
                 : (oracle_infeasible ? "ok (infeasible)" : "ok"))
        << '\n';
  }
  out << "validated " << checked << " points, " << flagged << " flagged\n";
  std::fputs(out.str().c_str(), stdout);
  if (!cfg.output_path.empty()) write_file(cfg.output_path, out.str());
  return flagged > 0 ? 1 : 0;
}

int cmd_hardening(const RunConfig& cfg, const Flags& flags) {
  (void)flags;
  constexpr std::uint32_t kSamples = 10000;
  std::vector<std::uint32_t> antenna_counts{cfg.params.n_t};
  for (std::uint32_t n : {20u, 50u, 100u}) {
    if (n != cfg.params.n_t) antenna_counts.push_back(n);
  }
  std::ostringstream out;
  out << "seed=" << cfg.seed << " samples=" << kSamples << '\n';
  for (std::uint32_t n_t : antenna_counts) {
    double mean = 0.0, stddev = 0.0;
    check_rc(wpcn_hardening_stats(n_t, kSamples, cfg.seed, &mean, &stddev),
             "hardening_stats");
    out << "hardening n_t=" << n_t << " mean_ratio=" << g9(mean)
        << " std_ratio=" << g9(stddev) << '\n';
  }
  // Rate-gap report at the full-power, half-slot operating point.
  for (std::uint32_t n_t : antenna_counts) {
    wpcn_system_params params = cfg.params;
    params.n_t = n_t;
    const double p = params.p1_max_w;
    const double tau = 0.5 * params.slot_s;
    const double nt = static_cast<double>(n_t);
    double exact = 0.0, hardened = 0.0;
    check_rc(wpcn_avg_rate_exact(&params, p, tau, nt, nt, &exact),
             "avg_rate_exact");
    check_rc(wpcn_avg_rate_hardened(&params, p, tau, &hardened),
             "avg_rate_hardened");
    const double det_gap =
        exact > 0.0 ? std::fabs(exact - hardened) / exact : 0.0;
    double mean_gap = 0.0, max_gap = 0.0;
    std::uint32_t excluded = 0;
    check_rc(wpcn_rate_gap_stats(&params, p, tau, kSamples, cfg.seed,
                                 &mean_gap, &max_gap, &excluded),
             "rate_gap_stats");
    out << "rate_gap n_t=" << n_t << " p_w=" << g9(p) << " tau_s=" << g9(tau)
        << " deterministic_pct=" << g9(det_gap * 100.0)
        << " mc_mean_pct=" << g9(mean_gap * 100.0)
        << " mc_max_pct=" << g9(max_gap * 100.0) << " excluded=" << excluded
        << '\n';
  }
  std::fputs(out.str().c_str(), stdout);
  if (!cfg.output_path.empty()) write_file(cfg.output_path, out.str());
  return 0;
}

void add_common_options(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON configuration file")
      ->required();
  cmd->add_option("--out", flags.out_path, "output file path");
  cmd->add_option("--trace", flags.trace_path,
                  "write per-iteration (q, F) trace CSV");
  cmd->add_option("--scheme", flags.scheme,
                  "joint | duration_only | both (overrides config)");
  cmd->add_option("--variant", flags.variant,
                  "box_tau_max | exact_harvest_cap (overrides config)");
  cmd->add_option("--seed", flags.seed, "RNG seed (overrides config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_flag("--kbj", flags.kbj, "report efficiency in Kb/J");
  cmd->add_flag("--emit-plot-data", flags.emit_plot_data,
                "also write long-format plot data next to the sweep CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-efficiency optimizer for wirelessly powered links"};
  app.require_subcommand(1);

  Flags flags;
  CLI::App* solve = app.add_subcommand("solve", "solve one configuration");
  CLI::App* sweep = app.add_subcommand("sweep", "solve across a sweep");
  CLI::App* validate =
      app.add_subcommand("validate", "cross-check the solver against the "
                                     "brute-force grid oracle");
  CLI::App* hardening = app.add_subcommand(
      "hardening", "Monte Carlo channel-hardening and rate-gap report");
  for (CLI::App* cmd : {solve, sweep, validate, hardening}) {
    add_common_options(cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = load_config(flags.config_path);
    apply_flags(cfg, flags);
    if (solve->parsed()) return cmd_solve(cfg, flags);
    if (sweep->parsed()) return cmd_sweep(cfg, flags);
    if (validate->parsed()) return cmd_validate(cfg, flags);
    return cmd_hardening(cfg, flags);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

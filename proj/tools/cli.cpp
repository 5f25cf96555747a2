// Copyright 2026 The EdgeMORE Authors
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

#include "cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "edgemore/exact.hpp"
#include "edgemore/generator.hpp"
#include "edgemore/harness.hpp"
#include "edgemore/heuristics.hpp"
#include "edgemore/io.hpp"
#include "edgemore/model.hpp"

namespace edgemore::cli {
namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("EDGEMORE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      // Fall through to 0 for unparsable values.
    }
  }
  return 0;
}

std::string format_vector(const ResourceVector& v) {
  return fmt::format("({:.6g})", fmt::join(v.amounts(), ", "));
}

// Thrown by command bodies for bad flag values detected after parsing.
struct UsageError : Error {
  using Error::Error;
};

struct GenerateFlags {
  int providers = 50;
  int nodes = 8;
  int options = 5;
  int containers = 8;
  double load_factor = 1.8;
  double cpu = 16.0;
  double ram = 32.0;
  double demand_spread = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveFlags {
  std::string scenario;
  std::string solver = "exact";
  std::uint64_t seed = 0;
  std::int64_t time_limit_ms = 0;
  std::string out_allocation;
  std::string out_report;
};

struct SweepFlags {
  std::string figure = "fig3";
  std::string profile = "desk";
  int runs = 20;
  std::uint64_t base_seed = 0;
  std::vector<std::string> solvers{"exact", "greedy", "naive"};
  std::string out;
  std::string log;
  int jobs = 0;
  std::int64_t time_limit_ms = 0;
};

struct ValidateFlags {
  std::string scenario;
  std::string allocation;
};

int cmd_generate(const GenerateFlags& f, bool quiet, std::ostream& out) {
  GenParams params;
  params.n_providers = f.providers;
  params.n_nodes = f.nodes;
  params.options_per_provider = f.options;
  params.containers_per_option = f.containers;
  params.load_factor = f.load_factor;
  params.node_capacity = ResourceVector{f.cpu, f.ram};
  params.demand_spread = f.demand_spread;
  params.seed = f.seed;
  try {
    params.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  const Scenario scenario = generate(params);
  write_scenario(f.out, scenario, &params);
  if (!quiet) {
    const long containers = static_cast<long>(f.providers) * f.options * f.containers;
    fmt::print(out,
               "generated {}: providers={} options={} containers={} nodes={} "
               "mean_demand={}\n",
               f.out, f.providers, f.providers * f.options, containers, f.nodes,
               format_vector(mean_demand(params)));
  }
  return kExitOk;
}

int cmd_solve(const SolveFlags& f, bool quiet, std::ostream& out) {
  SolverKind kind;
  try {
    kind = parse_solver(f.solver);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  SolveLimits limits;
  if (f.time_limit_ms > 0) limits.time_limit_ms = f.time_limit_ms;
  const Scenario scenario = read_scenario(f.scenario);

  SolveResult result;
  switch (kind) {
    case SolverKind::kExact:
      result = solve_exact(scenario, limits);
      break;
    case SolverKind::kGreedy:
      result = solve_greedy(scenario);
      break;
    case SolverKind::kNaive:
      result = solve_naive(scenario, f.seed);
      break;
  }
  if (!f.out_allocation.empty()) {
    write_allocation(f.out_allocation, result.allocation, result.report);
  }
  if (!f.out_report.empty()) write_report(f.out_report, result.report);
  if (!quiet) {
    const SolveReport& r = result.report;
    fmt::print(out,
               "solver={} objective={:.6f} utility_pct={:.3f} usage={} "
               "runtime_ms={:.3f} proven_optimal={}\n",
               r.solver_name, r.objective, r.utility_pct,
               format_vector(r.usage_fraction), r.runtime_ms, r.proven_optimal);
  }
  return kExitOk;
}

int cmd_sweep(const SweepFlags& f, bool quiet, std::ostream& out) {
  Figure figure;
  if (f.figure == "fig3") {
    figure = Figure::kFig3;
  } else if (f.figure == "fig4") {
    figure = Figure::kFig4;
  } else {
    throw UsageError(fmt::format("unknown figure '{}'", f.figure));
  }
  Profile profile;
  if (f.profile == "desk") {
    profile = Profile::kDesk;
  } else if (f.profile == "paper") {
    profile = Profile::kPaper;
  } else {
    throw UsageError(fmt::format("unknown profile '{}'", f.profile));
  }

  SweepConfig config = figure_config(figure, profile);
  config.runs_per_point = f.runs;
  config.base_seed = f.base_seed;
  if (f.time_limit_ms > 0) config.limits.time_limit_ms = f.time_limit_ms;
  config.jobs = f.jobs > 0 ? f.jobs
                           : static_cast<int>(std::max(
                                 1u, std::thread::hardware_concurrency()));
  config.solvers.clear();
  try {
    for (const std::string& s : f.solvers) config.solvers.push_back(parse_solver(s));
    config.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const SweepResult result = run_sweep(config);
  write_results(f.out, result, config);
  if (!f.log.empty()) write_run_log(f.log, result, config);
  if (!quiet) {
    for (const SweepRow& r : result.rows) {
      fmt::print(out,
                 "{}={} {:<6} utility_pct={:.2f} [{:.2f}, {:.2f}] "
                 "usage=({:.3f}, {:.3f}) runtime_ms={:.1f} optimal={}/{}\n",
                 to_string(r.kind), r.sweep_value, r.solver, r.mean_utility_pct,
                 r.ci95_low, r.ci95_high, r.mean_usage[0], r.mean_usage[1],
                 r.mean_runtime_ms, r.n_proven_optimal, r.n_runs);
    }
  }
  return kExitOk;
}

int cmd_validate(const ValidateFlags& f, bool quiet, std::ostream& out) {
  const Scenario scenario = read_scenario(f.scenario);
  const Allocation alloc = read_allocation(f.allocation);
  const ValidationResult check = validate(scenario, alloc);
  if (check.ok()) {
    if (!quiet) out << "OK\n";
    return kExitOk;
  }
  for (const Violation& v : check.violations) out << v.message << "\n";
  return kExitInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multi-tenant edge resource allocation: generate, solve, "
               "validate and sweep"};
  app.require_subcommand(1);
  // Lets the global flags appear after the subcommand name too.
  app.fallthrough();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress summaries (files are still written)");

  const std::uint64_t env_seed = default_seed();

  GenerateFlags gen;
  gen.seed = env_seed;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic scenario");
  generate_cmd->add_option("--providers", gen.providers, "Service providers N")
      ->capture_default_str();
  generate_cmd->add_option("--nodes", gen.nodes, "Edge nodes M")->capture_default_str();
  generate_cmd->add_option("--options", gen.options, "Options per provider J")
      ->capture_default_str();
  generate_cmd->add_option("--containers", gen.containers, "Containers per option Z")
      ->capture_default_str();
  generate_cmd->add_option("--load-factor", gen.load_factor, "Load factor K")
      ->capture_default_str();
  generate_cmd->add_option("--cpu", gen.cpu, "CPU capacity per node")->capture_default_str();
  generate_cmd->add_option("--ram", gen.ram, "RAM (GB) per node")->capture_default_str();
  generate_cmd->add_option("--demand-spread", gen.demand_spread,
                           "Relative half-width of the demand distribution")
      ->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "Seed (default $EDGEMORE_SEED or 0)");
  generate_cmd->add_option("--out", gen.out, "Scenario JSON path")->required();

  SolveFlags solve;
  solve.seed = env_seed;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a scenario");
  solve_cmd->add_option("--scenario", solve.scenario, "Scenario JSON path")->required();
  solve_cmd->add_option("--solver", solve.solver, "exact|greedy|naive")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Seed for the naive solver");
  solve_cmd->add_option("--time-limit-ms", solve.time_limit_ms,
                        "Exact solver time limit (0 = none)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--out-allocation", solve.out_allocation, "Allocation JSON path");
  solve_cmd->add_option("--out-report", solve.out_report, "Report JSON path");

  SweepFlags sweep;
  sweep.base_seed = env_seed;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a figure sweep");
  sweep_cmd->add_option("--figure", sweep.figure, "fig3 (options) | fig4 (nodes)")
      ->capture_default_str();
  sweep_cmd->add_option("--profile", sweep.profile, "desk | paper")->capture_default_str();
  sweep_cmd->add_option("--runs", sweep.runs, "Runs per sweep point")->capture_default_str();
  sweep_cmd->add_option("--base-seed", sweep.base_seed, "Base seed");
  sweep_cmd->add_option("--solvers", sweep.solvers, "Comma-separated solvers")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path")->required();
  sweep_cmd->add_option("--log", sweep.log, "Per-run JSON lines path");
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--time-limit-ms", sweep.time_limit_ms,
                        "Override the exact solver time limit")
      ->check(CLI::NonNegativeNumber);

  ValidateFlags val;
  auto* validate_cmd = app.add_subcommand("validate", "Check an allocation");
  validate_cmd->add_option("--scenario", val.scenario, "Scenario JSON path")->required();
  validate_cmd->add_option("--allocation", val.allocation, "Allocation JSON path")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen, quiet, out);
    if (*solve_cmd) return cmd_solve(solve, quiet, out);
    if (*sweep_cmd) return cmd_sweep(sweep, quiet, out);
    if (*validate_cmd) return cmd_validate(val, quiet, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace edgemore::cli

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

#include "edgemore/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <json.hpp>

#include "edgemore/heuristics.hpp"
#include "edgemore/io.hpp"
#include "edgemore/random.hpp"

#ifndef EDGEMORE_VERSION
#define EDGEMORE_VERSION "unknown"
#endif

namespace edgemore {

using nlohmann::json;

std::string_view to_string(SweepKind kind) {
  return kind == SweepKind::kOptions ? "options" : "nodes";
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kGreedy:
      return "greedy";
    case SolverKind::kNaive:
      return "naive";
  }
  return "unknown";
}

SweepKind parse_sweep_kind(std::string_view name) {
  if (name == "options") return SweepKind::kOptions;
  if (name == "nodes") return SweepKind::kNodes;
  throw Error(fmt::format("unknown sweep kind '{}'", name));
}

SolverKind parse_solver(std::string_view name) {
  if (name == "exact") return SolverKind::kExact;
  if (name == "greedy") return SolverKind::kGreedy;
  if (name == "naive") return SolverKind::kNaive;
  throw Error(fmt::format("unknown solver '{}'", name));
}

void SweepConfig::validate() const {
  if (values.empty()) throw ParameterError("sweep values must not be empty");
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] <= values[k - 1]) {
      throw ParameterError("sweep values must be strictly increasing");
    }
  }
  if (values.front() < 1) throw ParameterError("sweep values must be >= 1");
  if (runs_per_point < 1) throw ParameterError("runs_per_point must be >= 1");
  if (solvers.empty()) throw ParameterError("at least one solver is required");
  if (jobs < 1) throw ParameterError("jobs must be >= 1");
  limits.validate();
  base_params.validate();
}

SweepConfig figure_config(Figure figure, Profile profile) {
  SweepConfig config;
  if (profile == Profile::kDesk) {
    config.base_params.n_providers = 12;
    config.base_params.containers_per_option = 4;
    config.limits.time_limit_ms = 60'000;
  } else {
    config.base_params.n_providers = 50;
    config.base_params.containers_per_option = 8;
  }
  if (figure == Figure::kFig3) {
    config.kind = SweepKind::kOptions;
    config.values = {1, 2, 3, 4, 5, 6, 7, 8};
    config.base_params.n_nodes = profile == Profile::kDesk ? 3 : 8;
  } else {
    config.kind = SweepKind::kNodes;
    config.values = profile == Profile::kDesk ? std::vector<int>{2, 4, 8}
                                              : std::vector<int>{2, 4, 8, 16, 32};
    config.base_params.options_per_provider = 5;
  }
  return config;
}

std::uint64_t run_seed(const SweepConfig& config, int value, int run) {
  if (config.kind == SweepKind::kOptions) {
    return derive_seed(config.base_seed, {std::uint64_t(run)});
  }
  return derive_seed(config.base_seed,
                     {std::uint64_t(value), std::uint64_t(run)});
}

GenParams point_params(const SweepConfig& config, int value,
                       std::uint64_t seed) {
  GenParams params = config.base_params;
  if (config.kind == SweepKind::kOptions) {
    params.options_per_provider = value;
  } else {
    params.n_nodes = value;
  }
  params.seed = seed;
  return params;
}

double percentile(std::span<const double> samples, double p) {
  if (samples.empty()) throw EmptySample("percentile of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Summary aggregate(std::span<const double> samples) {
  if (samples.empty()) throw EmptySample("cannot aggregate an empty sample");
  double sum = 0.0;
  for (double s : samples) sum += s;
  Summary out;
  out.mean = sum / static_cast<double>(samples.size());
  out.low = percentile(samples, 0.025);
  out.high = percentile(samples, 0.975);
  // A heavy tail can put the mean beyond a percentile; the reported
  // interval is widened so that it always contains the mean.
  out.low = std::min(out.low, out.mean);
  out.high = std::max(out.high, out.mean);
  return out;
}

namespace {

SolveResult run_solver(SolverKind kind, const Scenario& scenario,
                       std::uint64_t seed, const SolveLimits& limits,
                       const Allocation* start_from) {
  switch (kind) {
    case SolverKind::kExact:
      return solve_exact(scenario, limits, {}, start_from);
    case SolverKind::kGreedy:
      return solve_greedy(scenario);
    case SolverKind::kNaive:
      return solve_naive(scenario, seed);
  }
  throw Error("unreachable solver kind");
}

json config_to_json(const SweepConfig& c) {
  json solvers = json::array();
  for (SolverKind s : c.solvers) solvers.push_back(std::string(to_string(s)));
  json limits = json::object();
  limits["time_limit_ms"] =
      c.limits.time_limit_ms ? json(*c.limits.time_limit_ms) : json(nullptr);
  limits["node_budget"] =
      c.limits.node_budget ? json(*c.limits.node_budget) : json(nullptr);
  return {{"sweep_kind", std::string(to_string(c.kind))},
          {"sweep_values", c.values},
          {"base_params", params_to_json(c.base_params)},
          {"solvers", std::move(solvers)},
          {"runs_per_point", c.runs_per_point},
          {"base_seed", c.base_seed},
          {"limits", std::move(limits)}};
}

// Formats with the shortest representation that reads back exactly.
std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t n_values = config.values.size();
  const auto n_runs = static_cast<std::size_t>(config.runs_per_point);
  const std::size_t n_solvers = config.solvers.size();
  const std::size_t n_tasks = n_values * n_runs;

  std::vector<RunRecord> records(n_tasks * n_solvers);
  // Options sweeps nest their scenarios: the instance for J options extends
  // the one for J-1 of the same run. A run is then one task, walked in value
  // order, and the exact solver starts from the previous point's allocation
  // so that a time limit can never make a run's curve decrease.
  const bool chained = config.kind == SweepKind::kOptions;
  const std::size_t n_units = chained ? n_runs : n_tasks;
  std::atomic<std::size_t> next{0};
  auto solve_task = [&](std::size_t t, std::optional<Allocation>& previous) {
    const std::size_t v = t / n_runs;
    const int run = static_cast<int>(t % n_runs);
    const int value = config.values[v];
    const std::uint64_t seed = run_seed(config, value, run);
    const Scenario scenario = generate(point_params(config, value, seed));
    for (std::size_t s = 0; s < n_solvers; ++s) {
      const bool exact = config.solvers[s] == SolverKind::kExact;
      const Allocation* start =
          exact && previous && v > 0 && config.values[v - 1] < value
              ? &*previous
              : nullptr;
      SolveResult result =
          run_solver(config.solvers[s], scenario, seed, config.limits, start);
      if (exact && chained) previous = result.allocation;
      records[t * n_solvers + s] = {value, run, seed, std::move(result.report)};
    }
  };
  auto worker = [&]() {
    for (std::size_t u = next++; u < n_units; u = next++) {
      std::optional<Allocation> previous;
      if (!chained) {
        solve_task(u, previous);
        continue;
      }
      for (std::size_t v = 0; v < n_values; ++v) {
        solve_task(v * n_runs + u, previous);
      }
    }
  };
  const auto jobs = std::min<std::size_t>(static_cast<std::size_t>(config.jobs),
                                          n_units);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < jobs; ++k) pool.emplace_back(worker);
  }

  SweepResult result;
  for (std::size_t v = 0; v < n_values; ++v) {
    for (std::size_t s = 0; s < n_solvers; ++s) {
      std::vector<double> utility, runtime;
      std::vector<double> usage(2, 0.0);
      int proven = 0;
      for (std::size_t r = 0; r < n_runs; ++r) {
        const SolveReport& rep = records[(v * n_runs + r) * n_solvers + s].report;
        utility.push_back(rep.utility_pct);
        runtime.push_back(rep.runtime_ms);
        for (std::size_t l = 0; l < usage.size(); ++l) {
          usage[l] += rep.usage_fraction[l];
        }
        proven += rep.proven_optimal ? 1 : 0;
      }
      const Summary u = aggregate(utility);
      SweepRow row;
      row.kind = config.kind;
      row.sweep_value = config.values[v];
      row.solver = std::string(to_string(config.solvers[s]));
      row.mean_utility_pct = u.mean;
      row.ci95_low = u.low;
      row.ci95_high = u.high;
      for (double& x : usage) x /= static_cast<double>(n_runs);
      row.mean_usage = std::move(usage);
      row.mean_runtime_ms = aggregate(runtime).mean;
      row.n_runs = static_cast<int>(n_runs);
      row.n_proven_optimal = proven;
      result.rows.push_back(std::move(row));
    }
  }
  // Records grouped as (value, run, solver).
  result.runs = std::move(records);
  return result;
}

std::uint64_t config_hash(const SweepConfig& config) {
  // FNV-1a over the canonical JSON form; jobs is deliberately left out.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_to_json(config).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string metadata_line(const SweepConfig& config) {
  return fmt::format("# edgemore {} prng={} config={:016x}", EDGEMORE_VERSION,
                     kPrngName, config_hash(config));
}

void write_results(const std::filesystem::path& path, const SweepResult& result,
                   const SweepConfig& config) {
  std::string out = metadata_line(config) + "\n";
  out += kCsvHeader;
  out += "\n";
  for (const SweepRow& r : result.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.kind),
                       r.sweep_value, r.solver, num(r.mean_utility_pct),
                       num(r.ci95_low), num(r.ci95_high), num(r.mean_usage[0]),
                       num(r.mean_usage[1]), num(r.mean_runtime_ms), r.n_runs,
                       r.n_proven_optimal);
  }
  write_text(path, out);
}

std::vector<SweepRow> read_results(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw SchemaError(fmt::format("{}:{}: unexpected CSV header",
                                      path.string(), line_no));
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 11) {
      throw SchemaError(fmt::format("{}:{}: expected 11 columns, got {}",
                                    path.string(), line_no, cells.size()));
    }
    static constexpr const char* kColumns[] = {
        "sweep_kind", "sweep_value", "solver", "mean_utility_pct",
        "ci95_low", "ci95_high", "mean_cpu_usage", "mean_ram_usage",
        "mean_runtime_ms", "n_runs", "n_proven_optimal"};
    std::size_t col = 0;
    try {
      SweepRow row;
      row.kind = parse_sweep_kind(cells[col]);
      row.sweep_value = std::stoi(cells[++col]);
      row.solver = cells[++col];
      row.mean_utility_pct = std::stod(cells[++col]);
      row.ci95_low = std::stod(cells[++col]);
      row.ci95_high = std::stod(cells[++col]);
      const double cpu = std::stod(cells[++col]);
      const double ram = std::stod(cells[++col]);
      row.mean_usage = {cpu, ram};
      row.mean_runtime_ms = std::stod(cells[++col]);
      row.n_runs = std::stoi(cells[++col]);
      row.n_proven_optimal = std::stoi(cells[++col]);
      rows.push_back(std::move(row));
    } catch (const std::exception&) {
      throw SchemaError(fmt::format("{}:{}: bad value '{}' in column {}",
                                    path.string(), line_no, cells[col],
                                    kColumns[col]));
    }
  }
  if (!header_seen) {
    throw SchemaError(fmt::format("{}: missing CSV header", path.string()));
  }
  return rows;
}

void write_run_log(const std::filesystem::path& path, const SweepResult& result,
                   const SweepConfig& config) {
  json meta = {{"version", EDGEMORE_VERSION},
               {"prng", std::string(kPrngName)},
               {"config_hash", fmt::format("{:016x}", config_hash(config))},
               {"config", config_to_json(config)}};
  std::string out = json{{"meta", std::move(meta)}}.dump() + "\n";
  for (const RunRecord& rec : result.runs) {
    json line = report_to_json(rec.report);
    line["sweep_value"] = rec.sweep_value;
    line["run"] = rec.run;
    line["seed"] = rec.seed;
    line["params"] = params_to_json(point_params(config, rec.sweep_value, rec.seed));
    out += line.dump() + "\n";
  }
  write_text(path, out);
}

}  // namespace edgemore

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

// Parameter sweeps over seeded scenarios: vary the number of options per
// provider or the number of nodes, solve every instance with the selected
// solvers, and aggregate utility, resource usage and runtime per point.

#ifndef EDGEMORE_HARNESS_HPP_
#define EDGEMORE_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgemore/exact.hpp"
#include "edgemore/generator.hpp"
#include "edgemore/model.hpp"

namespace edgemore {

class EmptySample : public Error {
 public:
  using Error::Error;
};

enum class SweepKind { kOptions, kNodes };
enum class SolverKind { kExact, kGreedy, kNaive };
enum class Figure { kFig3, kFig4 };
enum class Profile { kDesk, kPaper };

std::string_view to_string(SweepKind kind);
std::string_view to_string(SolverKind kind);
// Throw Error on unknown names.
SweepKind parse_sweep_kind(std::string_view name);
SolverKind parse_solver(std::string_view name);

struct SweepConfig {
  SweepKind kind = SweepKind::kOptions;
  // Options per provider (kOptions) or node count (kNodes).
  std::vector<int> values;
  GenParams base_params;
  std::vector<SolverKind> solvers{SolverKind::kExact, SolverKind::kNaive};
  int runs_per_point = 20;
  std::uint64_t base_seed = 0;
  SolveLimits limits;
  // Worker threads; results do not depend on it.
  int jobs = 1;

  // Throws ParameterError.
  void validate() const;
};

// Preset sweeps. Desk: N=12, Z=4, 60 s per exact solve; options sweep
// J = 1..8 on 3 nodes, nodes sweep M in {2, 4, 8} with J = 5. Paper: N=50,
// Z=8, no time limit; options sweep on 8 nodes, nodes sweep M in
// {2, 4, 8, 16, 32}.
SweepConfig figure_config(Figure figure, Profile profile);

// Seed of run r at sweep value v. For options sweeps the seed ignores v so
// that the scenario with J options extends the one with J - 1 options.
std::uint64_t run_seed(const SweepConfig& config, int value, int run);
// Generator parameters for sweep value v and run seed.
GenParams point_params(const SweepConfig& config, int value,
                       std::uint64_t seed);

struct RunRecord {
  int sweep_value = 0;
  int run = 0;
  std::uint64_t seed = 0;
  SolveReport report;
};

struct SweepRow {
  SweepKind kind = SweepKind::kOptions;
  int sweep_value = 0;
  std::string solver;
  double mean_utility_pct = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::vector<double> mean_usage;
  double mean_runtime_ms = 0.0;
  int n_runs = 0;
  int n_proven_optimal = 0;
};

struct SweepResult {
  // One row per (value, solver), values ascending, solvers in config order.
  std::vector<SweepRow> rows;
  // One record per (value, run, solver) in the same order.
  std::vector<RunRecord> runs;
};

struct Summary {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// Linear interpolation between order statistics: with the samples sorted,
// the p-quantile sits at fractional rank p * (n - 1).
double percentile(std::span<const double> samples, double p);

// Arithmetic mean with the empirical 2.5th and 97.5th percentiles (widened
// to contain the mean if a heavy tail puts it outside).
// Throws EmptySample.
Summary aggregate(std::span<const double> samples);

// Runs every (value, run) instance; rows and records are emitted in
// (value, run) order whatever the number of jobs. In an options sweep the
// exact solver of each run starts from its allocation at the previous
// value, which stays valid because the scenarios are nested.
SweepResult run_sweep(const SweepConfig& config);

inline constexpr std::string_view kCsvHeader =
    "sweep_kind,sweep_value,solver,mean_utility_pct,ci95_low,ci95_high,"
    "mean_cpu_usage,mean_ram_usage,mean_runtime_ms,n_runs,n_proven_optimal";

// "# edgemore <version> prng=<name> config=<hash>" line written ahead of the
// CSV header.
std::string metadata_line(const SweepConfig& config);
std::uint64_t config_hash(const SweepConfig& config);

void write_results(const std::filesystem::path& path, const SweepResult& result,
                   const SweepConfig& config);
// Skips '#' lines, requires the exact header. Throws SchemaError.
std::vector<SweepRow> read_results(const std::filesystem::path& path);

// JSON lines: a metadata object, then one object per solve.
void write_run_log(const std::filesystem::path& path, const SweepResult& result,
                   const SweepConfig& config);

}  // namespace edgemore

#endif  // EDGEMORE_HARNESS_HPP_

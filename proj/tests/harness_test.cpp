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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "edgemore/io.hpp"
#include "testing.hpp"

namespace edgemore {
namespace {

using testing::TempDir;

TEST(Aggregate, HandValues) {
  std::vector<double> ramp(101);
  std::iota(ramp.begin(), ramp.end(), 0.0);
  Summary s = aggregate(ramp);
  EXPECT_NEAR(s.mean, 50.0, 1e-12);
  EXPECT_NEAR(s.low, 2.5, 1e-12);
  EXPECT_NEAR(s.high, 97.5, 1e-12);

  const std::vector<double> ones{1, 1, 1};
  s = aggregate(ones);
  EXPECT_DOUBLE_EQ(s.mean, 1);
  EXPECT_DOUBLE_EQ(s.low, 1);
  EXPECT_DOUBLE_EQ(s.high, 1);

  const std::vector<double> seven{7};
  s = aggregate(seven);
  EXPECT_DOUBLE_EQ(s.low, 7);
  EXPECT_DOUBLE_EQ(s.high, 7);

  EXPECT_THROW(aggregate(std::vector<double>{}), EmptySample);
}

TEST(Aggregate, IntervalAlwaysContainsMean) {
  std::vector<double> tail(40, 0.0);
  tail.back() = 1000.0;
  Summary s = aggregate(tail);
  EXPECT_LE(s.low, s.mean);
  EXPECT_GE(s.high, s.mean);
}

TEST(Percentile, Interpolates) {
  const std::vector<double> v{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(percentile(v, 0.0), 1);
  EXPECT_DOUBLE_EQ(percentile(v, 1.0), 4);
  EXPECT_DOUBLE_EQ(percentile(v, 0.5), 2.5);
}

TEST(FigureConfig, Presets) {
  SweepConfig f3 = figure_config(Figure::kFig3, Profile::kDesk);
  EXPECT_EQ(f3.kind, SweepKind::kOptions);
  EXPECT_EQ(f3.values, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(f3.base_params.n_providers, 12);
  EXPECT_EQ(f3.base_params.containers_per_option, 4);
  EXPECT_EQ(f3.runs_per_point, 20);
  EXPECT_EQ(f3.limits.time_limit_ms, 60'000);

  SweepConfig f4 = figure_config(Figure::kFig4, Profile::kPaper);
  EXPECT_EQ(f4.kind, SweepKind::kNodes);
  EXPECT_EQ(f4.base_params.n_providers, 50);
  EXPECT_EQ(f4.base_params.options_per_provider, 5);
  EXPECT_FALSE(f4.limits.time_limit_ms.has_value());
  EXPECT_EQ(figure_config(Figure::kFig3, Profile::kPaper).base_params.n_nodes,
            8);
}

TEST(RunSeed, OptionsSweepSharesSeedAcrossValues) {
  SweepConfig c = figure_config(Figure::kFig3, Profile::kDesk);
  EXPECT_EQ(run_seed(c, 1, 4), run_seed(c, 8, 4));
  EXPECT_NE(run_seed(c, 1, 4), run_seed(c, 1, 5));
  c.kind = SweepKind::kNodes;
  EXPECT_NE(run_seed(c, 2, 4), run_seed(c, 4, 4));
}

SweepConfig small_options_sweep() {
  SweepConfig c;
  c.kind = SweepKind::kOptions;
  c.values = {1, 2, 3};
  c.base_params.n_providers = 5;
  c.base_params.n_nodes = 2;
  c.base_params.containers_per_option = 2;
  c.solvers = {SolverKind::kExact, SolverKind::kGreedy, SolverKind::kNaive};
  c.runs_per_point = 4;
  c.base_seed = 9;
  return c;
}

TEST(RunSweep, ShapeAndPerRunMonotonicity) {
  const SweepConfig c = small_options_sweep();
  SweepResult r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 9u);
  ASSERT_EQ(r.runs.size(), 36u);
  EXPECT_EQ(r.rows[0].solver, "exact");
  EXPECT_EQ(r.rows[8].sweep_value, 3);
  for (int run = 0; run < 4; ++run) {
    double prev = -1;
    for (int v = 0; v < 3; ++v) {
      const RunRecord& rec = r.runs[(v * 4 + run) * 3];
      EXPECT_EQ(rec.report.solver_name, "exact");
      EXPECT_GE(rec.report.objective, prev);
      prev = rec.report.objective;
    }
  }
}

TEST(RunSweep, IndependentOfJobs) {
  SweepConfig c = small_options_sweep();
  SweepResult one = run_sweep(c);
  c.jobs = 3;
  SweepResult three = run_sweep(c);
  ASSERT_EQ(one.rows.size(), three.rows.size());
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    EXPECT_EQ(one.rows[k].mean_utility_pct, three.rows[k].mean_utility_pct);
  }
  EXPECT_EQ(config_hash(c), config_hash(small_options_sweep()));
}

TEST(RunSweep, SingleRunGivesDegenerateInterval) {
  SweepConfig c = small_options_sweep();
  c.kind = SweepKind::kNodes;
  c.values = {2};
  c.solvers = {SolverKind::kGreedy};
  c.runs_per_point = 1;
  SweepResult r = run_sweep(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].ci95_low, r.rows[0].mean_utility_pct);
  EXPECT_EQ(r.rows[0].ci95_high, r.rows[0].mean_utility_pct);
}

TEST(SweepConfig, Validation) {
  SweepConfig c = small_options_sweep();
  c.runs_per_point = 0;
  EXPECT_THROW(run_sweep(c), ParameterError);
  c = small_options_sweep();
  c.values.clear();
  EXPECT_THROW(run_sweep(c), ParameterError);
  c = small_options_sweep();
  c.solvers.clear();
  EXPECT_THROW(run_sweep(c), ParameterError);
}

TEST(Results, CsvLayoutAndRoundTrip) {
  TempDir dir;
  const SweepConfig c = small_options_sweep();
  const SweepResult r = run_sweep(c);
  write_results(dir / "r.csv", r, c);
  const std::string text = read_text(dir / "r.csv");
  EXPECT_EQ(text.rfind("# edgemore ", 0), 0u);
  EXPECT_NE(text.find("\n" + std::string(kCsvHeader) + "\n"), std::string::npos);
  EXPECT_NE(text.find("prng=mt19937_64"), std::string::npos);

  const std::vector<SweepRow> back = read_results(dir / "r.csv");
  ASSERT_EQ(back.size(), r.rows.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].solver, r.rows[k].solver);
    EXPECT_EQ(back[k].mean_utility_pct, r.rows[k].mean_utility_pct);
    EXPECT_EQ(back[k].mean_usage, r.rows[k].mean_usage);
    EXPECT_EQ(back[k].n_proven_optimal, r.rows[k].n_proven_optimal);
  }

  write_text(dir / "bad.csv", "a,b,c\n1,2,3\n");
  EXPECT_THROW(read_results(dir / "bad.csv"), SchemaError);
}

TEST(Results, RunLogHasOneLinePerSolve) {
  TempDir dir;
  const SweepConfig c = small_options_sweep();
  const SweepResult r = run_sweep(c);
  write_run_log(dir / "log.jsonl", r, c);
  const std::string text = read_text(dir / "log.jsonl");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'),
            static_cast<long>(r.runs.size() + 1));
}

TEST(Parse, Names) {
  EXPECT_EQ(parse_solver("greedy"), SolverKind::kGreedy);
  EXPECT_EQ(parse_sweep_kind("nodes"), SweepKind::kNodes);
  EXPECT_THROW(parse_solver("cplex"), Error);
  EXPECT_EQ(to_string(SolverKind::kNaive), "naive");
}

}  // namespace
}  // namespace edgemore

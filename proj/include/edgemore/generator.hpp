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

// Seeded synthetic workload: identical nodes, container demands calibrated
// so that the expected total demand is a fixed multiple (the load factor)
// of the total capacity, and per-option utilities that grow concavely with
// the option's share of the cluster.

#ifndef EDGEMORE_GENERATOR_HPP_
#define EDGEMORE_GENERATOR_HPP_

#include <cstdint>

#include "edgemore/model.hpp"

namespace edgemore {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct GenParams {
  int n_providers = 50;
  int n_nodes = 8;
  int options_per_provider = 5;
  int containers_per_option = 8;
  double load_factor = 1.8;
  // CPU cores and GB of RAM per node.
  ResourceVector node_capacity{16.0, 32.0};
  Interval alpha_range{0.0, 1.0};
  Interval beta_range{1.0, 5.0};
  // Container demands are Uniform(mean * (1 - spread), mean * (1 + spread)).
  double demand_spread = 0.5;
  std::uint64_t seed = 0;

  // Throws ParameterError naming the first offending field.
  void validate() const;
  friend bool operator==(const GenParams&, const GenParams&) = default;
};

// Mean container demand per resource type: load_factor * c_tot / (Z * N),
// with c_tot = n_nodes * node_capacity.
ResourceVector mean_demand(const GenParams& params);

// Concave utility of an option as a function of its aggregate demand:
//   alpha * (cpu / cpu_tot)^(1/beta_cpu) + (1 - alpha) * (ram / ram_tot)^(1/beta_ram)
// Both ratios are clamped to [0, 1], so the result lies in [0, 1].
double option_utility(const ResourceVector& option_demand,
                      const ResourceVector& totals, double alpha,
                      double beta_cpu, double beta_ram);

// Deterministic in params. Each option (provider i, option j) draws its
// alpha/beta from a stream keyed by (seed, i, j) and each container from a
// stream keyed by (seed, i, j, z), so growing N, J or Z only appends.
Scenario generate(const GenParams& params);

}  // namespace edgemore

#endif  // EDGEMORE_GENERATOR_HPP_

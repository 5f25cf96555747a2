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

#include "edgemore/generator.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "edgemore/random.hpp"

namespace edgemore {
namespace {

constexpr std::uint64_t kOptionStream = 1;
constexpr std::uint64_t kContainerStream = 2;

bool valid_interval(Interval r) {
  return std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi;
}

}  // namespace

void GenParams::validate() const {
  auto fail = [](const char* field, const std::string& why) {
    throw ParameterError(fmt::format("invalid {}: {}", field, why));
  };
  if (n_providers < 1) fail("n_providers", "must be >= 1");
  if (n_nodes < 1) fail("n_nodes", "must be >= 1");
  if (options_per_provider < 1) fail("options_per_provider", "must be >= 1");
  if (containers_per_option < 1) fail("containers_per_option", "must be >= 1");
  if (!(std::isfinite(load_factor) && load_factor > 0.0)) {
    fail("load_factor", "must be finite and > 0");
  }
  if (node_capacity.size() != 2) {
    fail("node_capacity", "must have exactly two components (cpu, ram)");
  }
  if (!node_capacity.is_positive()) fail("node_capacity", "must be > 0");
  if (!valid_interval(alpha_range) || alpha_range.lo < 0.0 ||
      alpha_range.hi > 1.0) {
    fail("alpha_range", "must be a sub-interval of [0, 1]");
  }
  if (!valid_interval(beta_range) || beta_range.lo < 1.0) {
    fail("beta_range", "must be an interval with lower bound >= 1");
  }
  if (!(demand_spread >= 0.0 && demand_spread < 1.0)) {
    fail("demand_spread", "must lie in [0, 1)");
  }
}

ResourceVector mean_demand(const GenParams& params) {
  params.validate();
  const double denom = static_cast<double>(params.containers_per_option) *
                       static_cast<double>(params.n_providers);
  ResourceVector mean(params.node_capacity.size());
  for (std::size_t l = 0; l < mean.size(); ++l) {
    const double total = params.n_nodes * params.node_capacity[l];
    mean[l] = params.load_factor * total / denom;
  }
  return mean;
}

double option_utility(const ResourceVector& option_demand,
                      const ResourceVector& totals, double alpha,
                      double beta_cpu, double beta_ram) {
  auto share = [&](std::size_t l) {
    return std::clamp(option_demand[l] / totals[l], 0.0, 1.0);
  };
  const double u = alpha * std::pow(share(0), 1.0 / beta_cpu) +
                   (1.0 - alpha) * std::pow(share(1), 1.0 / beta_ram);
  return std::clamp(u, 0.0, 1.0);
}

Scenario generate(const GenParams& params) {
  params.validate();
  const ResourceVector mean = mean_demand(params);
  const std::size_t L = params.node_capacity.size();
  const ResourceVector totals = params.node_capacity.scaled(params.n_nodes);

  std::vector<NodeSpec> nodes;
  nodes.reserve(params.n_nodes);
  for (int m = 0; m < params.n_nodes; ++m) {
    nodes.push_back({NodeId{m + 1}, params.node_capacity});
  }

  std::vector<ServiceProvider> providers;
  providers.reserve(params.n_providers);
  for (int i = 0; i < params.n_providers; ++i) {
    ServiceProvider sp{ProviderId{i + 1}, {}};
    sp.options.reserve(params.options_per_provider);
    for (int j = 0; j < params.options_per_provider; ++j) {
      ConfigOption opt{OptionId{j + 1}, 0.0, {}};
      opt.containers.reserve(params.containers_per_option);
      for (int z = 0; z < params.containers_per_option; ++z) {
        Rng rng(derive_seed(params.seed,
                            {kContainerStream, std::uint64_t(i),
                             std::uint64_t(j), std::uint64_t(z)}));
        ResourceVector demands(L);
        for (std::size_t l = 0; l < L; ++l) {
          demands[l] = rng.uniform(mean[l] * (1.0 - params.demand_spread),
                                   mean[l] * (1.0 + params.demand_spread));
        }
        opt.containers.push_back({ContainerId{z + 1}, std::move(demands)});
      }
      Rng rng(derive_seed(params.seed, {kOptionStream, std::uint64_t(i),
                                        std::uint64_t(j)}));
      const double alpha =
          rng.uniform(params.alpha_range.lo, params.alpha_range.hi);
      const double beta_cpu =
          rng.uniform(params.beta_range.lo, params.beta_range.hi);
      const double beta_ram =
          rng.uniform(params.beta_range.lo, params.beta_range.hi);
      opt.utility =
          option_utility(option_demand(opt), totals, alpha, beta_cpu, beta_ram);
      sp.options.push_back(std::move(opt));
    }
    providers.push_back(std::move(sp));
  }
  return Scenario(Scenario::default_resource_types(), std::move(nodes),
                  std::move(providers));
}

}  // namespace edgemore

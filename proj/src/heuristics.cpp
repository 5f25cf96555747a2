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

#include "edgemore/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "edgemore/random.hpp"
#include "packing.hpp"

namespace edgemore {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Largest demand share of the container relative to total capacity.
double max_share(const ContainerSpec& c, const ResourceVector& totals) {
  double best = 0.0;
  for (std::size_t l = 0; l < totals.size(); ++l) {
    if (totals[l] > 0.0) best = std::max(best, c.demands[l] / totals[l]);
  }
  return best;
}

// Slack left in the tightest dimension of node m after adding `demand`,
// as a fraction of that node's capacity.
double bottleneck_slack(const Scenario& scenario,
                        const internal::Residual& residual, std::size_t m,
                        std::span<const double> demand) {
  const auto cap = scenario.nodes()[m].capacities;
  const auto r = residual.node(m);
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < r.size(); ++l) {
    slack = std::min(slack, (r[l] - demand[l]) / cap[l]);
  }
  return slack;
}

}  // namespace

SolveResult solve_naive(const Scenario& scenario, std::uint64_t seed) {
  const auto start = Clock::now();
  Rng rng(seed);
  const std::size_t n = scenario.num_providers();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = n; k > 1; --k) {
    std::swap(order[k - 1], order[rng.index(k)]);
  }

  internal::Residual residual(scenario);
  std::vector<internal::DenseChoice> choices(n);
  std::vector<std::size_t> candidates;
  for (std::size_t i : order) {
    const auto& options = scenario.providers()[i].options;
    if (options.empty()) continue;
    const std::size_t j = rng.index(options.size());
    const auto& containers = options[j].containers;

    std::vector<std::size_t> nodes;
    bool placed_all = true;
    for (const ContainerSpec& c : containers) {
      candidates.clear();
      for (std::size_t m = 0; m < residual.num_nodes(); ++m) {
        if (residual.fits(m, c.demands.amounts())) candidates.push_back(m);
      }
      if (candidates.empty()) {
        placed_all = false;
        break;
      }
      const std::size_t m = candidates[rng.index(candidates.size())];
      residual.take(m, c.demands.amounts());
      nodes.push_back(m);
    }
    if (!placed_all) {
      for (std::size_t z = 0; z < nodes.size(); ++z) {
        residual.give(nodes[z], containers[z].demands.amounts());
      }
      continue;
    }
    choices[i] = {static_cast<int>(j), std::move(nodes)};
  }

  Allocation alloc = internal::to_allocation(scenario, choices);
  SolveReport report =
      make_report(scenario, alloc, "naive", elapsed_ms(start), false);
  return {std::move(alloc), std::move(report)};
}

SolveResult solve_greedy(const Scenario& scenario) {
  const auto start = Clock::now();
  const ResourceVector& totals = scenario.total_capacity();
  const std::size_t L = scenario.num_resources();

  struct Candidate {
    std::size_t provider;
    std::size_t option;
    double density;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < scenario.num_providers(); ++i) {
    const auto& options = scenario.providers()[i].options;
    for (std::size_t j = 0; j < options.size(); ++j) {
      const ResourceVector demand = option_demand(options[j]);
      double mean_share = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        mean_share += totals[l] > 0.0
                          ? demand[l] / totals[l]
                          : (demand[l] > 0.0
                                 ? std::numeric_limits<double>::infinity()
                                 : 0.0);
      }
      mean_share /= static_cast<double>(L);
      const double density =
          mean_share > 0.0 ? options[j].utility / mean_share
                           : std::numeric_limits<double>::infinity();
      candidates.push_back({i, j, density});
    }
  }
  const auto& providers = scenario.providers();
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const Candidate& a, const Candidate& b) {
                     if (a.density != b.density) return a.density > b.density;
                     const auto pa = providers[a.provider].id;
                     const auto pb = providers[b.provider].id;
                     if (pa != pb) return pa < pb;
                     return providers[a.provider].options[a.option].id <
                            providers[b.provider].options[b.option].id;
                   });

  internal::Residual residual(scenario);
  std::vector<internal::DenseChoice> choices(scenario.num_providers());
  for (const Candidate& cand : candidates) {
    if (choices[cand.provider].option >= 0) continue;
    const auto& containers = providers[cand.provider].options[cand.option].containers;

    std::vector<std::size_t> order(containers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return max_share(containers[a], totals) >
                              max_share(containers[b], totals);
                     });

    std::vector<std::size_t> nodes(containers.size());
    std::vector<std::size_t> placed;
    for (std::size_t z : order) {
      const auto demand = containers[z].demands.amounts();
      std::size_t best = residual.num_nodes();
      double best_slack = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < residual.num_nodes(); ++m) {
        if (!residual.fits(m, demand)) continue;
        const double slack = bottleneck_slack(scenario, residual, m, demand);
        if (best == residual.num_nodes() || slack < best_slack) {
          best = m;
          best_slack = slack;
        }
      }
      if (best == residual.num_nodes()) break;
      residual.take(best, demand);
      nodes[z] = best;
      placed.push_back(z);
    }
    if (placed.size() != containers.size()) {
      for (std::size_t z : placed) {
        residual.give(nodes[z], containers[z].demands.amounts());
      }
      continue;
    }
    choices[cand.provider] = {static_cast<int>(cand.option), std::move(nodes)};
  }

  Allocation alloc = internal::to_allocation(scenario, choices);
  SolveReport report =
      make_report(scenario, alloc, "greedy", elapsed_ms(start), false);
  return {std::move(alloc), std::move(report)};
}

}  // namespace edgemore

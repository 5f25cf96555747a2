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

#ifndef EDGEMORE_EXACT_HPP_
#define EDGEMORE_EXACT_HPP_

#include <cstdint>
#include <functional>
#include <optional>

#include "edgemore/model.hpp"

namespace edgemore {

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

struct SolveLimits {
  // Wall-clock limit; unset means unlimited. Must be > 0 when set.
  std::optional<std::int64_t> time_limit_ms;
  // Maximum number of search nodes; unset means unlimited.
  std::optional<std::uint64_t> node_budget;

  void validate() const;
};

// Called with the objective of every new incumbent, in discovery order.
using IncumbentCallback = std::function<void(double objective)>;

// Branch-and-bound over providers (descending best utility), then over
// each option and finally "no option". Every accepted option must fit next
// to the containers already placed: the new containers are first packed
// into the residual space, and only if that fails are all containers
// repacked from scratch (a few randomized bounded tries, then a complete
// search). Subtrees are pruned against the minimum of the sum of
// per-provider best utilities and of single-constraint multiple-choice
// knapsack LP relaxations (one per resource type plus one on the sum of
// normalized demands). The greedy heuristic supplies the first incumbent.
//
// A valid `start_from` allocation better than the greedy one becomes the
// first incumbent instead; an invalid one is ignored.
//
// When a limit is hit the best incumbent is returned with
// proven_optimal = false. Deterministic for a given scenario and limits
// (except where the time limit interrupts the search).
SolveResult solve_exact(const Scenario& scenario, const SolveLimits& limits = {},
                        const IncumbentCallback& on_incumbent = {},
                        const Allocation* start_from = nullptr);

inline constexpr std::uint64_t kDefaultBruteForceLeaves = 10'000'000;

// Exhaustive enumeration of every option selection and every
// container-to-node assignment. Intended as a test oracle; throws
// InstanceTooLarge when the number of leaves exceeds max_leaves.
SolveResult brute_force(const Scenario& scenario,
                        std::uint64_t max_leaves = kDefaultBruteForceLeaves);

// Number of leaves brute_force would enumerate, saturating at max_leaves + 1.
std::uint64_t brute_force_leaves(const Scenario& scenario,
                                 std::uint64_t max_leaves = kDefaultBruteForceLeaves);

}  // namespace edgemore

#endif  // EDGEMORE_EXACT_HPP_

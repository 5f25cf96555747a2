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

#ifndef EDGEMORE_HEURISTICS_HPP_
#define EDGEMORE_HEURISTICS_HPP_

#include <cstdint>

#include "edgemore/model.hpp"

namespace edgemore {

// Random baseline. Providers are visited in a seeded random order; each
// draws one of its options uniformly (without checking feasibility first)
// and places the containers one at a time on a node drawn uniformly among
// those with enough residual capacity. If a container cannot be placed the
// provider's partial placement is rolled back and it gets no option.
SolveResult solve_naive(const Scenario& scenario, std::uint64_t seed);

// Utility-density heuristic. Every (provider, option) pair is scored by
//   utility / mean_l(demand_l / c_{l,tot})
// and candidates are accepted in descending score when their provider is
// still free and all containers fit under best-fit placement. Ties go to
// the lower provider id, then the lower option id.
SolveResult solve_greedy(const Scenario& scenario);

}  // namespace edgemore

#endif  // EDGEMORE_HEURISTICS_HPP_

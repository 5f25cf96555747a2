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

#include "packing.hpp"

#include <algorithm>

namespace edgemore::internal {

Residual::Residual(const Scenario& scenario)
    : num_nodes_(scenario.num_nodes()),
      num_resources_(scenario.num_resources()) {
  residual_.reserve(num_nodes_ * num_resources_);
  for (const NodeSpec& node : scenario.nodes()) {
    residual_.insert(residual_.end(), node.capacities.begin(),
                     node.capacities.end());
  }
}

bool Residual::same_as(std::size_t m, std::size_t k) const {
  auto a = node(m);
  auto b = node(k);
  return std::equal(a.begin(), a.end(), b.begin());
}

Allocation to_allocation(const Scenario& scenario,
                         const std::vector<DenseChoice>& choices) {
  Allocation alloc;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const DenseChoice& choice = choices[i];
    if (choice.option < 0) continue;
    const ServiceProvider& sp = scenario.providers()[i];
    const ConfigOption& opt = sp.options[static_cast<std::size_t>(choice.option)];
    alloc.choices.push_back({sp.id, opt.id});
    for (std::size_t z = 0; z < opt.containers.size(); ++z) {
      alloc.placements.push_back(
          {sp.id, opt.id, opt.containers[z].id,
           scenario.nodes()[choice.container_nodes[z]].id});
    }
  }
  alloc.normalize();
  return alloc;
}

}  // namespace edgemore::internal

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

// Dense views used by the solvers. Not part of the public interface.

#ifndef EDGEMORE_SRC_PACKING_HPP_
#define EDGEMORE_SRC_PACKING_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "edgemore/model.hpp"

namespace edgemore::internal {

// Solvers keep half of the validation tolerance for themselves so that
// accumulated rounding can never turn an accepted placement into a
// capacity violation.
inline constexpr double kPackEps = kFeasibilityEps * 0.5;

// Residual capacity per node and resource, stored row-major [node][type].
class Residual {
 public:
  explicit Residual(const Scenario& scenario);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_resources() const { return num_resources_; }
  std::span<const double> node(std::size_t m) const {
    return {residual_.data() + m * num_resources_, num_resources_};
  }

  bool fits(std::size_t m, std::span<const double> demand) const {
    const double* r = residual_.data() + m * num_resources_;
    for (std::size_t l = 0; l < num_resources_; ++l) {
      if (demand[l] > r[l] + kPackEps) return false;
    }
    return true;
  }
  void take(std::size_t m, std::span<const double> demand) {
    double* r = residual_.data() + m * num_resources_;
    for (std::size_t l = 0; l < num_resources_; ++l) r[l] -= demand[l];
  }
  void give(std::size_t m, std::span<const double> demand) {
    double* r = residual_.data() + m * num_resources_;
    for (std::size_t l = 0; l < num_resources_; ++l) r[l] += demand[l];
  }
  // True when node m has exactly the same residual vector as node k.
  bool same_as(std::size_t m, std::size_t k) const;

 private:
  std::size_t num_nodes_;
  std::size_t num_resources_;
  std::vector<double> residual_;
};

// Per-provider decision in dense index form; option < 0 means no option.
// container_nodes[z] is the node index of container z of that option.
struct DenseChoice {
  int option = -1;
  std::vector<std::size_t> container_nodes;
};

Allocation to_allocation(const Scenario& scenario,
                         const std::vector<DenseChoice>& choices);

}  // namespace edgemore::internal

#endif  // EDGEMORE_SRC_PACKING_HPP_

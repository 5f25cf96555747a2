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

#include "edgemore/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include <fmt/core.h>

namespace edgemore {

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
  if (other.size() != size()) {
    throw ModelError(fmt::format("resource vector length mismatch: {} vs {}",
                                 size(), other.size()));
  }
  for (std::size_t l = 0; l < amounts_.size(); ++l) amounts_[l] += other[l];
  return *this;
}

ResourceVector ResourceVector::scaled(double factor) const {
  ResourceVector out = *this;
  for (double& a : out.amounts_) a *= factor;
  return out;
}

bool ResourceVector::is_non_negative() const {
  return std::all_of(amounts_.begin(), amounts_.end(),
                     [](double a) { return std::isfinite(a) && a >= 0.0; });
}

bool ResourceVector::is_positive() const {
  return std::all_of(amounts_.begin(), amounts_.end(),
                     [](double a) { return std::isfinite(a) && a > 0.0; });
}

ResourceVector option_demand(const ConfigOption& option) {
  if (option.containers.empty()) return {};
  ResourceVector total(option.containers.front().demands.size());
  for (const ContainerSpec& c : option.containers) total += c.demands;
  return total;
}

std::vector<ResourceType> Scenario::default_resource_types() {
  return {{"cpu", "core-time"}, {"ram", "GB"}};
}

Scenario::Scenario(std::vector<ResourceType> resource_types,
                   std::vector<NodeSpec> nodes,
                   std::vector<ServiceProvider> providers)
    : resource_types_(std::move(resource_types)),
      nodes_(std::move(nodes)),
      providers_(std::move(providers)),
      total_capacity_(resource_types_.size()) {
  const std::size_t L = resource_types_.size();
  if (L == 0) throw ModelError("scenario needs at least one resource type");

  for (std::size_t m = 0; m < nodes_.size(); ++m) {
    const NodeSpec& node = nodes_[m];
    if (node.capacities.size() != L) {
      throw ModelError(fmt::format(
          "node {}: capacity vector has length {}, expected {}",
          node.id.value, node.capacities.size(), L));
    }
    if (!node.capacities.is_positive()) {
      throw ModelError(fmt::format(
          "node {}: capacities must be finite and strictly positive",
          node.id.value));
    }
    if (!node_lookup_.emplace(node.id.value, m).second) {
      throw ModelError(fmt::format("duplicate node id {}", node.id.value));
    }
    total_capacity_ += node.capacities;
  }

  for (std::size_t i = 0; i < providers_.size(); ++i) {
    const ServiceProvider& sp = providers_[i];
    if (!provider_lookup_.emplace(sp.id.value, i).second) {
      throw ModelError(fmt::format("duplicate provider id {}", sp.id.value));
    }
    std::unordered_set<std::int64_t> option_ids;
    for (const ConfigOption& opt : sp.options) {
      if (!option_ids.insert(opt.id.value).second) {
        throw ModelError(fmt::format("provider {}: duplicate option id {}",
                                     sp.id.value, opt.id.value));
      }
      if (!std::isfinite(opt.utility) || opt.utility < 0.0 ||
          opt.utility > 1.0) {
        throw ModelError(fmt::format(
            "provider {} option {}: utility {} outside [0, 1]", sp.id.value,
            opt.id.value, opt.utility));
      }
      if (opt.containers.empty()) {
        throw ModelError(fmt::format("provider {} option {}: no containers",
                                     sp.id.value, opt.id.value));
      }
      std::unordered_set<std::int64_t> container_ids;
      for (const ContainerSpec& c : opt.containers) {
        if (!container_ids.insert(c.id.value).second) {
          throw ModelError(fmt::format(
              "provider {} option {}: duplicate container id {}", sp.id.value,
              opt.id.value, c.id.value));
        }
        if (c.demands.size() != L) {
          throw ModelError(fmt::format(
              "provider {} option {} container {}: demand vector has length "
              "{}, expected {}",
              sp.id.value, opt.id.value, c.id.value, c.demands.size(), L));
        }
        if (!c.demands.is_non_negative()) {
          throw ModelError(fmt::format(
              "provider {} option {} container {}: demands must be finite "
              "and non-negative",
              sp.id.value, opt.id.value, c.id.value));
        }
      }
    }
  }
}

std::optional<std::size_t> Scenario::node_index(NodeId id) const {
  auto it = node_lookup_.find(id.value);
  if (it == node_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Scenario::provider_index(ProviderId id) const {
  auto it = provider_lookup_.find(id.value);
  if (it == provider_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Scenario::option_index(std::size_t provider,
                                                  OptionId id) const {
  const auto& options = providers_.at(provider).options;
  for (std::size_t j = 0; j < options.size(); ++j) {
    if (options[j].id == id) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> Scenario::container_index(std::size_t provider,
                                                     std::size_t option,
                                                     ContainerId id) const {
  const auto& containers = providers_.at(provider).options.at(option).containers;
  for (std::size_t z = 0; z < containers.size(); ++z) {
    if (containers[z].id == id) return z;
  }
  return std::nullopt;
}

void Allocation::normalize() {
  std::sort(choices.begin(), choices.end());
  std::sort(placements.begin(), placements.end());
}

std::optional<OptionId> Allocation::choice_for(ProviderId provider) const {
  for (const Choice& c : choices) {
    if (c.provider == provider) return c.option;
  }
  return std::nullopt;
}

double total_utility(const Scenario& scenario, const Allocation& alloc) {
  double total = 0.0;
  for (const Choice& c : alloc.choices) {
    auto i = scenario.provider_index(c.provider);
    if (!i) {
      throw InvalidReference(
          fmt::format("unknown provider {}", c.provider.value));
    }
    auto j = scenario.option_index(*i, c.option);
    if (!j) {
      throw InvalidReference(fmt::format("provider {}: unknown option {}",
                                         c.provider.value, c.option.value));
    }
    total += scenario.providers()[*i].options[*j].utility;
  }
  return total;
}

ValidationResult validate(const Scenario& scenario, const Allocation& alloc) {
  ValidationResult result;
  auto report = [&](ViolationKind kind, std::string message) {
    result.violations.push_back({kind, std::move(message)});
  };

  // (provider index, option index) of every resolvable choice.
  std::set<std::pair<std::size_t, std::size_t>> chosen;
  std::map<std::size_t, int> choices_per_provider;
  for (const Choice& c : alloc.choices) {
    auto i = scenario.provider_index(c.provider);
    if (!i) {
      report(ViolationKind::kUnknownReference,
             fmt::format("reference: unknown provider {}", c.provider.value));
      continue;
    }
    auto j = scenario.option_index(*i, c.option);
    if (!j) {
      report(ViolationKind::kUnknownReference,
             fmt::format("reference: provider {} has no option {}",
                         c.provider.value, c.option.value));
      continue;
    }
    if (++choices_per_provider[*i] == 2) {
      report(ViolationKind::kMultipleOptions,
             fmt::format("single-option: provider {} has more than one "
                         "chosen option",
                         c.provider.value));
    }
    chosen.emplace(*i, *j);
  }

  const std::size_t L = scenario.num_resources();
  std::vector<ResourceVector> load(scenario.num_nodes(), ResourceVector(L));
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, int> placed;
  for (const Placement& p : alloc.placements) {
    auto i = scenario.provider_index(p.provider);
    auto m = scenario.node_index(p.node);
    std::optional<std::size_t> j, z;
    if (i) j = scenario.option_index(*i, p.option);
    if (j) z = scenario.container_index(*i, *j, p.container);
    if (!i || !j || !z || !m) {
      report(ViolationKind::kUnknownReference,
             fmt::format("reference: placement (provider {}, option {}, "
                         "container {}, node {}) names an unknown entity",
                         p.provider.value, p.option.value, p.container.value,
                         p.node.value));
      continue;
    }
    if (!chosen.contains({*i, *j})) {
      report(ViolationKind::kStrayPlacement,
             fmt::format("placement: container {} of provider {} option {} "
                         "is placed but the option is not chosen",
                         p.container.value, p.provider.value, p.option.value));
    }
    ++placed[{*i, *j, *z}];
    load[*m] += scenario.providers()[*i].options[*j].containers[*z].demands;
  }

  for (auto [i, j] : chosen) {
    const ServiceProvider& sp = scenario.providers()[i];
    const ConfigOption& opt = sp.options[j];
    for (std::size_t z = 0; z < opt.containers.size(); ++z) {
      auto it = placed.find({i, j, z});
      const int count = it == placed.end() ? 0 : it->second;
      if (count != 1) {
        report(ViolationKind::kContainerPlacement,
               fmt::format("placement: provider {} option {} container {} is "
                           "placed on {} nodes, expected exactly 1",
                           sp.id.value, opt.id.value,
                           opt.containers[z].id.value, count));
      }
    }
  }

  for (std::size_t m = 0; m < scenario.num_nodes(); ++m) {
    const NodeSpec& node = scenario.nodes()[m];
    for (std::size_t l = 0; l < L; ++l) {
      if (load[m][l] > node.capacities[l] + kFeasibilityEps) {
        report(ViolationKind::kCapacity,
               fmt::format("capacity: node {} resource {} load {} > "
                           "capacity {}",
                           node.id.value, scenario.resource_types()[l].name,
                           load[m][l], node.capacities[l]));
      }
    }
  }
  return result;
}

ResourceVector resource_usage(const Scenario& scenario,
                              const Allocation& alloc) {
  ValidationResult check = validate(scenario, alloc);
  if (!check.ok()) {
    throw InvalidAllocation(check.violations.front().message);
  }
  ResourceVector used(scenario.num_resources());
  for (const Placement& p : alloc.placements) {
    const std::size_t i = *scenario.provider_index(p.provider);
    const std::size_t j = *scenario.option_index(i, p.option);
    const std::size_t z = *scenario.container_index(i, j, p.container);
    used += scenario.providers()[i].options[j].containers[z].demands;
  }
  const ResourceVector& total = scenario.total_capacity();
  for (std::size_t l = 0; l < used.size(); ++l) {
    used[l] = total[l] > 0.0 ? used[l] / total[l] : 0.0;
  }
  return used;
}

SolveReport make_report(const Scenario& scenario, const Allocation& alloc,
                        std::string solver_name, double runtime_ms,
                        bool proven_optimal) {
  SolveReport report;
  report.solver_name = std::move(solver_name);
  report.objective = total_utility(scenario, alloc);
  const auto n = static_cast<double>(scenario.num_providers());
  report.utility_pct = n > 0 ? report.objective / n * 100.0 : 0.0;
  report.usage_fraction = resource_usage(scenario, alloc);
  report.runtime_ms = runtime_ms;
  report.proven_optimal = proven_optimal;
  return report;
}

}  // namespace edgemore

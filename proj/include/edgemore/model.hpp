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

// Problem instance and solution types for multi-tenant edge allocation.
//
// A Scenario holds M capacity-constrained nodes and N service providers.
// Every provider declares a list of configuration options; an option is a
// set of containers (each with a demand vector) plus a scalar utility in
// [0, 1]. An Allocation accepts at most one option per provider and maps
// every container of an accepted option to exactly one node.

#ifndef EDGEMORE_MODEL_HPP_
#define EDGEMORE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace edgemore {

// Absolute tolerance used for every capacity comparison.
inline constexpr double kFeasibilityEps = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scenario or one of its parts violates a structural invariant.
class ModelError : public Error {
 public:
  using Error::Error;
};

// An allocation names a provider, option, container or node that does not
// exist in the scenario.
class InvalidReference : public Error {
 public:
  using Error::Error;
};

class InvalidAllocation : public Error {
 public:
  using Error::Error;
};

// A generator, solver or harness parameter is out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Strongly typed integer identifier. Tag only distinguishes the kinds.
template <typename Tag>
struct Id {
  std::int64_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::int64_t v) : value(v) {}
  friend constexpr auto operator<=>(Id, Id) = default;
};

using NodeId = Id<struct NodeTag>;
using ProviderId = Id<struct ProviderTag>;
using OptionId = Id<struct OptionTag>;
using ContainerId = Id<struct ContainerTag>;

class ResourceVector {
 public:
  ResourceVector() = default;
  explicit ResourceVector(std::size_t size, double fill = 0.0)
      : amounts_(size, fill) {}
  ResourceVector(std::initializer_list<double> amounts) : amounts_(amounts) {}
  explicit ResourceVector(std::vector<double> amounts)
      : amounts_(std::move(amounts)) {}

  std::size_t size() const { return amounts_.size(); }
  bool empty() const { return amounts_.empty(); }
  double operator[](std::size_t l) const { return amounts_[l]; }
  double& operator[](std::size_t l) { return amounts_[l]; }
  std::span<const double> amounts() const { return amounts_; }
  auto begin() const { return amounts_.begin(); }
  auto end() const { return amounts_.end(); }

  // Componentwise; sizes must agree.
  ResourceVector& operator+=(const ResourceVector& other);
  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) {
    a += b;
    return a;
  }
  ResourceVector scaled(double factor) const;

  // True when every component is finite and >= 0.
  bool is_non_negative() const;
  // True when every component is finite and > 0.
  bool is_positive() const;

  friend bool operator==(const ResourceVector&, const ResourceVector&) = default;

 private:
  std::vector<double> amounts_;
};

struct ResourceType {
  std::string name;
  std::string unit;
  friend bool operator==(const ResourceType&, const ResourceType&) = default;
};

struct NodeSpec {
  NodeId id;
  ResourceVector capacities;
  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct ContainerSpec {
  ContainerId id;
  ResourceVector demands;
  friend bool operator==(const ContainerSpec&, const ContainerSpec&) = default;
};

struct ConfigOption {
  OptionId id;
  double utility = 0.0;
  std::vector<ContainerSpec> containers;
  friend bool operator==(const ConfigOption&, const ConfigOption&) = default;
};

struct ServiceProvider {
  ProviderId id;
  std::vector<ConfigOption> options;
  friend bool operator==(const ServiceProvider&,
                         const ServiceProvider&) = default;
};

// Componentwise sum of the option's container demands.
ResourceVector option_demand(const ConfigOption& option);

// Immutable problem instance. The constructor checks every invariant and
// throws ModelError on the first one that fails.
class Scenario {
 public:
  Scenario(std::vector<ResourceType> resource_types,
           std::vector<NodeSpec> nodes,
           std::vector<ServiceProvider> providers);

  // CPU (dimensionless core-time) and RAM (GB).
  static std::vector<ResourceType> default_resource_types();

  std::size_t num_resources() const { return resource_types_.size(); }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_providers() const { return providers_.size(); }

  const std::vector<ResourceType>& resource_types() const {
    return resource_types_;
  }
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<ServiceProvider>& providers() const { return providers_; }

  // Sum of node capacities per resource type (c_{l,tot}).
  const ResourceVector& total_capacity() const { return total_capacity_; }

  std::optional<std::size_t> node_index(NodeId id) const;
  std::optional<std::size_t> provider_index(ProviderId id) const;
  std::optional<std::size_t> option_index(std::size_t provider,
                                          OptionId id) const;
  std::optional<std::size_t> container_index(std::size_t provider,
                                             std::size_t option,
                                             ContainerId id) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.resource_types_ == b.resource_types_ && a.nodes_ == b.nodes_ &&
           a.providers_ == b.providers_;
  }

 private:
  std::vector<ResourceType> resource_types_;
  std::vector<NodeSpec> nodes_;
  std::vector<ServiceProvider> providers_;
  ResourceVector total_capacity_;
  std::unordered_map<std::int64_t, std::size_t> node_lookup_;
  std::unordered_map<std::int64_t, std::size_t> provider_lookup_;
};

struct Choice {
  ProviderId provider;
  OptionId option;
  friend auto operator<=>(const Choice&, const Choice&) = default;
};

struct Placement {
  ProviderId provider;
  OptionId option;
  ContainerId container;
  NodeId node;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

// Decision variables. A provider absent from `choices` has no accepted
// option. Kept as plain lists so that files with duplicate entries can be
// represented and rejected by validate().
struct Allocation {
  std::vector<Choice> choices;
  std::vector<Placement> placements;

  // Sorts both lists; solvers return allocations in this canonical form.
  void normalize();
  std::optional<OptionId> choice_for(ProviderId provider) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct SolveReport {
  std::string solver_name;
  double objective = 0.0;
  double utility_pct = 0.0;
  ResourceVector usage_fraction;
  double runtime_ms = 0.0;
  bool proven_optimal = false;
};

enum class ViolationKind {
  kUnknownReference,
  kContainerPlacement,  // a chosen container is not placed exactly once
  kStrayPlacement,      // placement for an option that is not chosen
  kCapacity,
  kMultipleOptions,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Sum of the utilities of the chosen options. Throws InvalidReference.
double total_utility(const Scenario& scenario, const Allocation& alloc);

// Checks container placement, node capacity and one-option-per-provider.
// Never throws; every problem found is reported.
ValidationResult validate(const Scenario& scenario, const Allocation& alloc);

// Deployed demand divided by total capacity, per resource type. Throws
// InvalidAllocation when validate() rejects the allocation.
ResourceVector resource_usage(const Scenario& scenario,
                              const Allocation& alloc);

// Builds a report for a solver result; objective and usage are recomputed
// from the allocation.
SolveReport make_report(const Scenario& scenario, const Allocation& alloc,
                        std::string solver_name, double runtime_ms,
                        bool proven_optimal);

// Result returned by every solver.
struct SolveResult {
  Allocation allocation;
  SolveReport report;
};

}  // namespace edgemore

template <typename Tag>
struct std::hash<edgemore::Id<Tag>> {
  std::size_t operator()(edgemore::Id<Tag> id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

#endif  // EDGEMORE_MODEL_HPP_

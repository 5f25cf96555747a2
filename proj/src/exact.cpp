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

#include "edgemore/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include <fmt/core.h>

#include "edgemore/heuristics.hpp"
#include "edgemore/random.hpp"
#include "packing.hpp"

namespace edgemore {
namespace {

using Clock = std::chrono::steady_clock;

// Objective differences below this are treated as ties.
constexpr double kObjectiveTol = 1e-10;

// Bounded repacking attempts before the complete one; attempt k may visit
// kRepackBudget * 2^k nodes.
constexpr int kRepackRestarts = 8;
constexpr std::uint64_t kRepackBudget = 2000;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct OptionData {
  std::size_t index = 0;
  double utility = 0.0;
  std::vector<double> total;
  // Normalized size: sum over types of total[l] / c_{l,tot}.
  double share = 0.0;
  // Container indices, largest first.
  std::vector<std::size_t> container_order;
};

struct ProviderData {
  std::size_t index = 0;
  double max_utility = 0.0;
  // Highest utility first.
  std::vector<OptionData> options;
};

// One step of a provider's LP hull: extra weight bought for extra utility.
struct Increment {
  double weight;
  double utility;
  double slope() const { return utility / weight; }
};

class BranchAndBound {
 public:
  BranchAndBound(const Scenario& scenario, const SolveLimits& limits,
                 const IncumbentCallback& on_incumbent,
                 const Allocation* start_from)
      : scenario_(scenario),
        start_from_(start_from),
        limits_(limits),
        on_incumbent_(on_incumbent),
        num_resources_(scenario.num_resources()),
        total_residual_(scenario.total_capacity().begin(),
                        scenario.total_capacity().end()),
        packing_(scenario),
        chosen_(scenario.num_providers(), -1),
        need_(num_resources_),
        room_(num_resources_) {
    build();
  }

  SolveResult run() {
    start_ = Clock::now();
    SolveResult warm = solve_greedy(scenario_);
    best_value_ = warm.report.objective;
    best_alloc_ = std::move(warm.allocation);
    if (start_from_ != nullptr && validate(scenario_, *start_from_).ok()) {
      const double v = total_utility(scenario_, *start_from_);
      if (v > best_value_) {
        best_value_ = v;
        best_alloc_ = *start_from_;
        best_alloc_.normalize();
      }
    }
    if (on_incumbent_) on_incumbent_(best_value_);

    if (!providers_.empty() &&
        upper_bound(0) > best_value_ + kObjectiveTol) {
      search(0, 0.0);
    }

    const bool proven = !aborted_;
    SolveReport report =
        make_report(scenario_, best_alloc_, "exact", elapsed_ms(start_), proven);
    return {std::move(best_alloc_), std::move(report)};
  }

 private:
  // A container of a chosen option, in the order options were chosen.
  struct Item {
    std::size_t provider;
    std::size_t container;
    std::span<const double> demand;
    double key;  // largest share of a single node's capacity
  };

  // Residual capacities together with the node of every item.
  struct Packing {
    explicit Packing(const Scenario& s) : residual(s) {}
    internal::Residual residual;
    std::vector<std::size_t> node_of;
  };

  void build() {
    const ResourceVector& totals = scenario_.total_capacity();
    const auto& providers = scenario_.providers();
    for (std::size_t i = 0; i < providers.size(); ++i) {
      ProviderData pd;
      pd.index = i;
      const auto& options = providers[i].options;
      for (std::size_t j = 0; j < options.size(); ++j) {
        OptionData od;
        od.index = j;
        od.utility = options[j].utility;
        const ResourceVector demand = option_demand(options[j]);
        od.total.assign(demand.begin(), demand.end());
        for (std::size_t l = 0; l < num_resources_; ++l) {
          od.share += totals[l] > 0.0 ? demand[l] / totals[l] : 0.0;
        }
        const auto& containers = options[j].containers;
        std::vector<double> key(containers.size());
        for (std::size_t z = 0; z < containers.size(); ++z) {
          key[z] = node_share(containers[z].demands.amounts());
        }
        od.container_order.resize(containers.size());
        std::iota(od.container_order.begin(), od.container_order.end(), 0);
        std::stable_sort(od.container_order.begin(), od.container_order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return key[a] > key[b];
                         });
        pd.max_utility = std::max(pd.max_utility, od.utility);
        pd.options.push_back(std::move(od));
      }
      if (pd.options.empty()) continue;
      std::stable_sort(pd.options.begin(), pd.options.end(),
                       [](const OptionData& a, const OptionData& b) {
                         return a.utility > b.utility;
                       });
      providers_.push_back(std::move(pd));
    }
    std::stable_sort(providers_.begin(), providers_.end(),
                     [](const ProviderData& a, const ProviderData& b) {
                       return a.max_utility > b.max_utility;
                     });
  }

  // Largest fraction of the biggest node's capacity the demand takes in any
  // resource type. Used only to order containers, largest first.
  double node_share(std::span<const double> demand) const {
    double share = 0.0;
    for (std::size_t l = 0; l < num_resources_; ++l) {
      double cap = 0.0;
      for (const NodeSpec& n : scenario_.nodes()) {
        cap = std::max(cap, n.capacities[l]);
      }
      if (cap > 0.0) share += demand[l] / cap;
    }
    return share;
  }

  bool fits_in_total(const OptionData& o) const {
    for (std::size_t l = 0; l < num_resources_; ++l) {
      if (o.total[l] > total_residual_[l] + internal::kPackEps) return false;
    }
    return true;
  }

  bool out_of_budget() {
    ++explored_;
    if (limits_.node_budget && explored_ > *limits_.node_budget) {
      aborted_ = true;
    } else if (limits_.time_limit_ms && (explored_ & 255) == 0 &&
               elapsed_ms(start_) >= static_cast<double>(*limits_.time_limit_ms)) {
      aborted_ = true;
    }
    return aborted_;
  }

  // LP relaxation of the multiple-choice knapsack over providers_[depth..]
  // with one aggregated capacity constraint. weight_of(o) gives the
  // option's weight under that constraint.
  template <typename WeightFn>
  double lp_bound(std::size_t depth, double capacity, WeightFn weight_of) {
    increments_.clear();
    double base = 0.0;
    for (std::size_t k = depth; k < providers_.size(); ++k) {
      points_.clear();
      points_.push_back({0.0, 0.0});
      for (const OptionData& o : providers_[k].options) {
        if (fits_in_total(o)) points_.push_back({weight_of(o), o.utility});
      }
      std::sort(points_.begin(), points_.end(),
                [](const Increment& a, const Increment& b) {
                  if (a.weight != b.weight) return a.weight < b.weight;
                  return a.utility > b.utility;
                });
      // Upper concave envelope of the undominated points.
      hull_.clear();
      for (const Increment& p : points_) {
        if (!hull_.empty() && p.utility <= hull_.back().utility) continue;
        if (!hull_.empty() && p.weight <= hull_.back().weight) {
          hull_.back() = p;  // same weight, higher utility
          continue;
        }
        while (hull_.size() >= 2) {
          const Increment& a = hull_[hull_.size() - 2];
          const Increment& b = hull_.back();
          // Drop b when it lies on or below the segment a -> p.
          if ((b.utility - a.utility) * (p.weight - a.weight) <=
              (p.utility - a.utility) * (b.weight - a.weight)) {
            hull_.pop_back();
          } else {
            break;
          }
        }
        hull_.push_back(p);
      }
      base += hull_.front().utility;
      for (std::size_t h = 1; h < hull_.size(); ++h) {
        increments_.push_back({hull_[h].weight - hull_[h - 1].weight,
                               hull_[h].utility - hull_[h - 1].utility});
      }
    }
    std::sort(increments_.begin(), increments_.end(),
              [](const Increment& a, const Increment& b) {
                return a.slope() > b.slope();
              });
    double room = std::max(0.0, capacity) + internal::kPackEps;
    double value = base;
    for (const Increment& inc : increments_) {
      if (inc.weight <= room) {
        room -= inc.weight;
        value += inc.utility;
      } else {
        value += inc.utility * (room / inc.weight);
        break;
      }
    }
    return value;
  }

  // Upper bound on the utility still obtainable from providers_[depth..]
  // given the aggregate residual capacity.
  double upper_bound(std::size_t depth) {
    double sum_max = 0.0;
    for (std::size_t k = depth; k < providers_.size(); ++k) {
      for (const OptionData& o : providers_[k].options) {
        if (fits_in_total(o)) {
          sum_max += o.utility;  // options are sorted by utility
          break;
        }
      }
    }
    double bound = sum_max;
    const ResourceVector& totals = scenario_.total_capacity();
    double share_capacity = 0.0;
    for (std::size_t l = 0; l < num_resources_; ++l) {
      if (totals[l] > 0.0) share_capacity += total_residual_[l] / totals[l];
      bound = std::min(bound, lp_bound(depth, total_residual_[l],
                                       [l](const OptionData& o) {
                                         return o.total[l];
                                       }));
    }
    if (num_resources_ > 1) {
      bound = std::min(bound, lp_bound(depth, share_capacity,
                                       [](const OptionData& o) {
                                         return o.share;
                                       }));
    }
    return bound;
  }

  void record(double value) {
    std::vector<internal::DenseChoice> dense(scenario_.num_providers());
    for (std::size_t i = 0; i < chosen_.size(); ++i) {
      if (chosen_[i] < 0) continue;
      dense[i].option = chosen_[i];
      dense[i].container_nodes.assign(
          scenario_.providers()[i].options[chosen_[i]].containers.size(), 0);
    }
    for (std::size_t k = 0; k < items_.size(); ++k) {
      dense[items_[k].provider].container_nodes[items_[k].container] =
          packing_.node_of[k];
    }
    best_alloc_ = internal::to_allocation(scenario_, dense);
    best_value_ = value;
    if (on_incumbent_) on_incumbent_(value);
  }

  // True when the items order[k..] cannot fit in the capacity left on the
  // nodes that can still take at least one of them.
  bool wasted_too_much(const Packing& p, const std::vector<std::size_t>& order,
                       std::size_t k) {
    std::fill(need_.begin(), need_.end(), 0.0);
    for (std::size_t q = k; q < order.size(); ++q) {
      const auto d = items_[order[q]].demand;
      for (std::size_t l = 0; l < num_resources_; ++l) need_[l] += d[l];
    }
    std::fill(room_.begin(), room_.end(), 0.0);
    for (std::size_t m = 0; m < p.residual.num_nodes(); ++m) {
      bool live = false;
      for (std::size_t q = k; q < order.size() && !live; ++q) {
        live = p.residual.fits(m, items_[order[q]].demand);
      }
      if (!live) continue;
      const auto r = p.residual.node(m);
      for (std::size_t l = 0; l < num_resources_; ++l) room_[l] += r[l];
    }
    for (std::size_t l = 0; l < num_resources_; ++l) {
      if (need_[l] > room_[l] + internal::kPackEps) return true;
    }
    return false;
  }

  // Depth-first assignment of items_[order[k..]] into `p`. Nodes whose
  // residual vector equals that of a lower-indexed node are skipped, since
  // swapping the contents of two identical nodes changes nothing.
  bool pack(Packing& p, const std::vector<std::size_t>& order, std::size_t k) {
    if (k == order.size()) return true;
    if (out_of_budget()) return false;
    if (limited_pack_) {
      if (pack_budget_ == 0) return false;
      --pack_budget_;
    }
    if (wasted_too_much(p, order, k)) return false;
    const Item& item = items_[order[k]];
    // Candidate nodes, tightest fit first.
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t m = 0; m < p.residual.num_nodes(); ++m) {
      if (!p.residual.fits(m, item.demand)) continue;
      bool duplicate = false;
      for (std::size_t prev = 0; prev < m && !duplicate; ++prev) {
        duplicate = p.residual.same_as(m, prev);
      }
      if (duplicate) continue;
      const auto r = p.residual.node(m);
      const auto cap = scenario_.nodes()[m].capacities;
      double slack = std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < num_resources_; ++l) {
        slack = std::min(slack, (r[l] - item.demand[l]) / cap[l]);
      }
      candidates.emplace_back(slack, m);
    }
    std::sort(candidates.begin(), candidates.end());
    for (auto [slack, m] : candidates) {
      p.residual.take(m, item.demand);
      p.node_of[order[k]] = m;
      if (pack(p, order, k + 1)) return true;
      p.residual.give(m, item.demand);
      if (aborted_) return false;
    }
    return false;
  }

  // Appends the containers of option o of provider pd to items_ and finds
  // a packing of all items: first by placing only the new containers around
  // the current packing, then by repacking everything from scratch. On
  // failure items_ and packing_ are left unchanged.
  bool add_option(const ProviderData& pd, const OptionData& o) {
    const auto& containers =
        scenario_.providers()[pd.index].options[o.index].containers;
    const std::size_t first_new = items_.size();
    for (std::size_t z : o.container_order) {
      items_.push_back({pd.index, z, containers[z].demands.amounts(),
                        node_share(containers[z].demands.amounts())});
    }

    Packing extended = packing_;
    extended.node_of.resize(items_.size());
    std::vector<std::size_t> order(items_.size() - first_new);
    std::iota(order.begin(), order.end(), first_new);
    if (pack(extended, order, 0)) {
      packing_ = std::move(extended);
      return true;
    }
    if (!aborted_ && first_new > 0) {
      order.resize(items_.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return items_[a].key > items_[b].key;
                       });
      // Short randomized attempts first: feasible packings are usually
      // found quickly from some ordering, while one unlucky ordering can
      // take very long. The final attempt is complete.
      Rng rng(items_.size());
      std::vector<std::size_t> shuffled = order;
      for (int attempt = 0; attempt <= kRepackRestarts && !aborted_; ++attempt) {
        const bool last = attempt == kRepackRestarts;
        limited_pack_ = !last;
        pack_budget_ = kRepackBudget << attempt;
        if (attempt > 0 && !last) {
          // Swap neighbours at random so large containers stay early.
          shuffled = order;
          for (std::size_t q = 0; q + 1 < shuffled.size(); ++q) {
            if (rng.index(2) == 0) std::swap(shuffled[q], shuffled[q + 1]);
          }
        }
        Packing fresh(scenario_);
        fresh.node_of.resize(items_.size());
        if (pack(fresh, last || attempt == 0 ? order : shuffled, 0)) {
          limited_pack_ = false;
          packing_ = std::move(fresh);
          return true;
        }
      }
      limited_pack_ = false;
    }
    items_.resize(first_new);
    return false;
  }

  void search(std::size_t depth, double value) {
    if (out_of_budget()) return;
    if (value > best_value_ + kObjectiveTol) record(value);
    if (depth == providers_.size()) return;

    const ProviderData& pd = providers_[depth];
    for (const OptionData& o : pd.options) {
      if (!fits_in_total(o)) continue;
      for (std::size_t l = 0; l < num_resources_; ++l) {
        total_residual_[l] -= o.total[l];
      }
      if (value + o.utility + upper_bound(depth + 1) >
          best_value_ + kObjectiveTol) {
        const Packing saved = packing_;
        const std::size_t saved_items = items_.size();
        if (add_option(pd, o)) {
          chosen_[pd.index] = static_cast<int>(o.index);
          search(depth + 1, value + o.utility);
          chosen_[pd.index] = -1;
          packing_ = saved;
          items_.resize(saved_items);
        }
      }
      for (std::size_t l = 0; l < num_resources_; ++l) {
        total_residual_[l] += o.total[l];
      }
      if (aborted_) return;
    }
    if (value + upper_bound(depth + 1) > best_value_ + kObjectiveTol) {
      search(depth + 1, value);
    }
  }

  const Scenario& scenario_;
  const Allocation* start_from_;
  const SolveLimits& limits_;
  const IncumbentCallback& on_incumbent_;
  std::size_t num_resources_;
  std::vector<double> total_residual_;
  std::vector<ProviderData> providers_;

  // Current partial solution: option per provider (-1 = none), the chosen
  // containers and where they sit.
  Packing packing_;
  std::vector<int> chosen_;
  std::vector<Item> items_;

  std::vector<Increment> increments_;
  std::vector<Increment> points_;
  std::vector<Increment> hull_;
  bool limited_pack_ = false;
  std::uint64_t pack_budget_ = 0;
  std::vector<double> need_;
  std::vector<double> room_;

  Clock::time_point start_;
  std::uint64_t explored_ = 0;
  bool aborted_ = false;
  double best_value_ = 0.0;
  Allocation best_alloc_;
};

}  // namespace

void SolveLimits::validate() const {
  if (time_limit_ms && *time_limit_ms <= 0) {
    throw ParameterError(fmt::format("time limit must be > 0 ms, got {}",
                            *time_limit_ms));
  }
}

SolveResult solve_exact(const Scenario& scenario, const SolveLimits& limits,
                        const IncumbentCallback& on_incumbent,
                        const Allocation* start_from) {
  limits.validate();
  return BranchAndBound(scenario, limits, on_incumbent, start_from).run();
}

std::uint64_t brute_force_leaves(const Scenario& scenario,
                                 std::uint64_t max_leaves) {
  const std::uint64_t cap = max_leaves + 1;
  auto saturating_mul = [cap](std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return std::uint64_t{0};
    return a > cap / b ? cap : std::min(cap, a * b);
  };
  const std::uint64_t m = scenario.num_nodes();
  std::uint64_t leaves = 1;
  for (const ServiceProvider& sp : scenario.providers()) {
    std::uint64_t branches = 1;  // no option
    for (const ConfigOption& opt : sp.options) {
      std::uint64_t assignments = 1;
      for (std::size_t z = 0; z < opt.containers.size(); ++z) {
        assignments = saturating_mul(assignments, m);
      }
      branches = std::min(cap, branches + assignments);
    }
    leaves = saturating_mul(leaves, branches);
  }
  return leaves;
}

namespace {

// Plain recursive enumeration with its own load bookkeeping; shares no
// search code with the branch-and-bound so that it can serve as an oracle.
class Enumerator {
 public:
  explicit Enumerator(const Scenario& s)
      : s_(s),
        load_(s.num_nodes(), std::vector<double>(s.num_resources(), 0.0)),
        current_(s.num_providers()) {}

  void run() { provider(0, 0.0); }

  double best_value = -1.0;
  std::vector<internal::DenseChoice> best;

 private:
  void provider(std::size_t i, double value) {
    if (i == s_.num_providers()) {
      if (value > best_value) {
        best_value = value;
        best = current_;
      }
      return;
    }
    current_[i].option = -1;
    provider(i + 1, value);
    const auto& options = s_.providers()[i].options;
    for (std::size_t j = 0; j < options.size(); ++j) {
      current_[i].option = static_cast<int>(j);
      current_[i].container_nodes.assign(options[j].containers.size(), 0);
      container(i, j, 0, value + options[j].utility);
    }
    current_[i].option = -1;
  }

  void container(std::size_t i, std::size_t j, std::size_t z, double value) {
    const auto& containers = s_.providers()[i].options[j].containers;
    if (z == containers.size()) {
      provider(i + 1, value);
      return;
    }
    const ResourceVector& d = containers[z].demands;
    for (std::size_t m = 0; m < s_.num_nodes(); ++m) {
      bool ok = true;
      for (std::size_t l = 0; l < d.size(); ++l) {
        ok = ok && load_[m][l] + d[l] <=
                       s_.nodes()[m].capacities[l] + internal::kPackEps;
      }
      for (std::size_t l = 0; l < d.size(); ++l) load_[m][l] += d[l];
      current_[i].container_nodes[z] = m;
      if (ok) container(i, j, z + 1, value);
      for (std::size_t l = 0; l < d.size(); ++l) load_[m][l] -= d[l];
    }
  }

  const Scenario& s_;
  std::vector<std::vector<double>> load_;
  std::vector<internal::DenseChoice> current_;
};

}  // namespace

SolveResult brute_force(const Scenario& scenario, std::uint64_t max_leaves) {
  const std::uint64_t leaves = brute_force_leaves(scenario, max_leaves);
  if (leaves > max_leaves) {
    throw InstanceTooLarge(fmt::format(
        "brute force would enumerate more than {} leaves", max_leaves));
  }
  const auto start = Clock::now();
  Enumerator e(scenario);
  e.run();
  Allocation alloc = internal::to_allocation(scenario, e.best);
  SolveReport report =
      make_report(scenario, alloc, "brute_force", elapsed_ms(start), true);
  return {std::move(alloc), std::move(report)};
}

}  // namespace edgemore

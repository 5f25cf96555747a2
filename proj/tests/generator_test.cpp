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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "edgemore/io.hpp"
#include "edgemore/random.hpp"

namespace edgemore {
namespace {

TEST(MeanDemand, DefaultsAtEightNodes) {
  GenParams p;
  p.n_nodes = 8;
  ResourceVector w = mean_demand(p);
  EXPECT_NEAR(w[0], 0.576, 1e-12);
  EXPECT_NEAR(w[1], 1.152, 1e-12);
}

TEST(MeanDemand, ScalesWithNodes) {
  GenParams p;
  p.n_nodes = 16;
  EXPECT_NEAR(mean_demand(p)[0], 2 * 0.576, 1e-12);
}

TEST(OptionUtility, HandValues) {
  EXPECT_NEAR(option_utility({128, 0}, {128, 256}, 1.0, 1.0, 3.0), 1.0, 1e-12);
  EXPECT_NEAR(option_utility({0.2 * 128, 0.4 * 256}, {128, 256}, 0.5, 1.0, 1.0),
              0.3, 1e-12);
  EXPECT_DOUBLE_EQ(option_utility({0, 0}, {128, 256}, 0.3, 2.0, 4.0), 0.0);
}

TEST(OptionUtility, ClampsOversizedDemand) {
  EXPECT_DOUBLE_EQ(option_utility({500, 900}, {128, 256}, 0.4, 2.0, 3.0), 1.0);
}

// Along each coordinate: non-decreasing, second differences <= 1e-9.
TEST(OptionUtility, MonotoneAndConcaveInEachCoordinate) {
  const ResourceVector totals{128, 256};
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = rng.uniform01();
    const double bc = rng.uniform(1, 5), br = rng.uniform(1, 5);
    for (std::size_t l = 0; l < 2; ++l) {
      ResourceVector base{rng.uniform(0, 128), rng.uniform(0, 256)};
      std::vector<double> f;
      for (int k = 0; k < 100; ++k) {
        ResourceVector w = base;
        w[l] = totals[l] * k / 99.0;
        f.push_back(option_utility(w, totals, alpha, bc, br));
      }
      for (int k = 1; k < 100; ++k) ASSERT_GE(f[k], f[k - 1] - 1e-12);
      for (int k = 1; k + 1 < 100; ++k) {
        ASSERT_LE(f[k + 1] - 2 * f[k] + f[k - 1], 1e-9)
            << "trial " << trial << " resource " << l << " k " << k;
      }
    }
  }
}

TEST(Generate, StructureAndIds) {
  GenParams p;
  p.n_providers = 50;
  p.options_per_provider = 5;
  p.containers_per_option = 8;
  p.seed = 1;
  const Scenario s = generate(p);
  ASSERT_EQ(s.num_providers(), 50u);
  ASSERT_EQ(s.num_nodes(), 8u);
  std::size_t containers = 0;
  for (const ServiceProvider& sp : s.providers()) {
    ASSERT_EQ(sp.options.size(), 5u);
    for (const ConfigOption& o : sp.options) {
      containers += o.containers.size();
      EXPECT_GE(o.utility, 0.0);
      EXPECT_LE(o.utility, 1.0);
      for (const ContainerSpec& c : o.containers) {
        EXPECT_GE(c.demands[0], 0.576 * 0.5);
        EXPECT_LT(c.demands[0], 0.576 * 1.5);
        EXPECT_GE(c.demands[1], 1.152 * 0.5);
        EXPECT_LT(c.demands[1], 1.152 * 1.5);
      }
    }
  }
  EXPECT_EQ(containers, 2000u);
  EXPECT_EQ(s.nodes().front().id, NodeId{1});
  EXPECT_EQ(s.nodes().back().capacities, (ResourceVector{16, 32}));
}

TEST(Generate, DeterministicAndSeedSensitive) {
  GenParams p;
  p.n_providers = 10;
  p.seed = 42;
  EXPECT_EQ(scenario_to_json(generate(p)).dump(),
            scenario_to_json(generate(p)).dump());
  GenParams q = p;
  q.seed = 43;
  EXPECT_FALSE(generate(p) == generate(q));
}

// Adding options keeps the existing ones intact, which is what makes the
// options sweep compare like with like.
TEST(Generate, OptionsArePrefixNested) {
  GenParams small;
  small.n_providers = 6;
  small.options_per_provider = 2;
  small.seed = 5;
  GenParams big = small;
  big.options_per_provider = 7;
  const Scenario a = generate(small), b = generate(big);
  for (std::size_t i = 0; i < a.num_providers(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(a.providers()[i].options[j], b.providers()[i].options[j]);
    }
  }
}

TEST(Generate, CalibratedMeanOverManyDemands) {
  GenParams p;
  p.n_providers = 50;
  p.options_per_provider = 250;
  p.containers_per_option = 8;  // 100000 containers
  p.seed = 3;
  const Scenario s = generate(p);
  double cpu = 0, ram = 0;
  std::size_t n = 0;
  for (const auto& sp : s.providers()) {
    for (const auto& o : sp.options) {
      for (const auto& c : o.containers) {
        cpu += c.demands[0];
        ram += c.demands[1];
        ++n;
      }
    }
  }
  ASSERT_EQ(n, 100000u);
  EXPECT_NEAR(cpu / n, 0.576, 0.576 * 0.01);
  EXPECT_NEAR(ram / n, 1.152, 1.152 * 0.01);
}

TEST(GenParams, RejectsInvalidValues) {
  auto bad = [](auto mutate) {
    GenParams p;
    mutate(p);
    return p;
  };
  EXPECT_THROW(generate(bad([](GenParams& p) { p.n_providers = 0; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.n_nodes = 0; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.containers_per_option = 0; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.load_factor = -1; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.alpha_range = {0.5, 1.5}; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.beta_range = {0.5, 2}; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.demand_spread = 1.0; })),
               ParameterError);
  EXPECT_THROW(generate(bad([](GenParams& p) { p.node_capacity = {16}; })),
               ParameterError);
}

TEST(Random, DeriveSeedSeparatesPaths) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(1, {a, b}));
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {1}));
  EXPECT_EQ(derive_seed(9, {1, 2}), derive_seed(9, {1, 2}));
}

TEST(Random, IndexIsInRangeAndCoversAll) {
  Rng rng(4);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 7000; ++k) ++hits.at(rng.index(7));
  for (int h : hits) EXPECT_GT(h, 800);
  for (int k = 0; k < 1000; ++k) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace edgemore

// Copyright 2026 The Stranger Authentication Simulator Authors
//
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


#include <algorithm>
#include <tuple>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stranger/adversary.hpp"
#include "stranger/graphgen.hpp"
#include "stranger/pathselect.hpp"
#include "stranger/rng.hpp"

namespace stranger {
namespace {

// Square: 0 = A, 1 = x, 2 = y, 3 = B.
const Graph kSquare(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});

TEST(SelectPaths, SquareGivesBothTwoHopPaths) {
  auto set = select_paths(kSquare, 0, 3, 2);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.paths[0], (Path{0, 1, 3}));
  EXPECT_EQ(set.paths[1], (Path{0, 2, 3}));
  EXPECT_EQ(set.shortfall, 0u);
  EXPECT_EQ(set.longest_hops(), 2u);
}

TEST(SelectPaths, SquareShortfallWhenAskingForMore) {
  auto set = select_paths(kSquare, 0, 3, 4);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.shortfall, 2u);
}

TEST(SelectPaths, DirectEdgeHasZeroCost) {
  Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
  auto set = select_paths(g, 0, 2, 1);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.paths[0], (Path{0, 2}));
  NodeCosts unit{std::vector<std::uint64_t>(3, 1)};
  EXPECT_EQ(path_cost(set.paths[0], unit), 0u);
}

TEST(SelectPaths, DisconnectedPairIsEmpty) {
  auto set = select_paths(Graph(4, {{0, 1}, {2, 3}}), 0, 3, 3);
  EXPECT_TRUE(set.empty());
  EXPECT_EQ(set.shortfall, 3u);
  EXPECT_EQ(set.longest_hops(), 0u);
}

TEST(SelectPaths, RejectsBadEndpoints) {
  EXPECT_THROW(select_paths(kSquare, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(select_paths(kSquare, 0, 9, 1), std::invalid_argument);
}

// Oracle order: cost, then hops, then vertex sequence.
Path oracle_first_path(const Graph& g, NodeId a, NodeId b) {
  auto all = oracle::all_simple_paths(g, a, b);
  return *std::min_element(all.begin(), all.end(), [](const Path& x, const Path& y) {
    return std::make_tuple(x.size(), x) < std::make_tuple(y.size(), y);
  });
}

TEST(SelectPaths, FirstPathIsTheExhaustiveMinimum) {
  Rng rng(21);
  int checked = 0;
  while (checked < 300) {
    Graph g = oracle::bernoulli_graph(7, 0.45, rng);
    if (oracle::all_simple_paths(g, 0, 6).empty()) continue;
    auto set = select_paths(g, 0, 6, 3);
    ASSERT_FALSE(set.empty());
    EXPECT_EQ(set.paths[0], oracle_first_path(g, 0, 6)) << to_edge_list(g);
    ++checked;
  }
}

TEST(SelectPaths, LeastCostPathIsMinimalUnderArbitraryCosts) {
  Rng rng(22);
  std::uniform_int_distribution<std::uint64_t> price(1, 5);
  for (int i = 0; i < 300; ++i) {
    Graph g = oracle::bernoulli_graph(8, 0.4, rng);
    NodeCosts costs{std::vector<std::uint64_t>(8)};
    for (auto& c : costs.cost) c = price(rng);
    auto all = oracle::all_simple_paths(g, 0, 7);
    auto got = least_cost_path(g, 0, 7, costs);
    ASSERT_EQ(got.has_value(), !all.empty());
    if (all.empty()) continue;
    auto best = *std::min_element(all.begin(), all.end(), [&](const Path& x, const Path& y) {
      return std::make_tuple(path_cost(x, costs), x.size(), x) < std::make_tuple(path_cost(y, costs), y.size(), y);
    });
    EXPECT_EQ(*got, best) << to_edge_list(g);
  }
}

TEST(SelectPaths, PathsAreSimpleDistinctAndDeterministic) {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    Graph g = gen_uniform(200, 1200, rng);
    auto a = select_paths(g, 3, 150, 8);
    auto b = select_paths(g, 3, 150, 8);
    EXPECT_EQ(a.paths, b.paths);
    EXPECT_EQ(a.costs.cost, b.costs.cost);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_TRUE(is_simple_path(g, a.paths[k], 3, 150));
      EXPECT_LE(a.paths[k].size() - 1, 199u);
      for (std::size_t m = 0; m < k; ++m) EXPECT_NE(a.paths[k], a.paths[m]);
    }
  }
}

TEST(SelectPaths, CostsCountIntermediateUses) {
  Rng rng(24);
  for (int i = 0; i < 20; ++i) {
    Graph g = gen_uniform(300, 2400, rng);
    auto set = select_paths(g, 0, 299, 6);
    std::vector<std::uint64_t> uses(300, 0);
    for (const auto& p : set.paths) {
      for (std::size_t k = 1; k + 1 < p.size(); ++k) ++uses[p[k]];
    }
    // Repeated searches also add to costs, so uses are a lower bound.
    std::uint64_t extra = 0;
    for (NodeId v = 0; v < 300; ++v) {
      ASSERT_GE(set.costs.cost[v], 1 + uses[v]);
      extra += set.costs.cost[v] - 1 - uses[v];
    }
    if (set.shortfall == 0 && extra == 0) {
      for (NodeId v = 0; v < 300; ++v) EXPECT_EQ(set.costs.cost[v], 1 + uses[v]);
    }
    EXPECT_EQ(set.costs.cost[0], 1u);
    EXPECT_EQ(set.costs.cost[299], 1u);
  }
  auto square = select_paths(kSquare, 0, 3, 2);
  EXPECT_EQ(square.costs.cost, (std::vector<std::uint64_t>{1, 2, 2, 1}));
}

TEST(SelectPaths, SecondPathAvoidsFirstWhenADisjointEqualLengthPathExists) {
  Rng rng(25);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    Graph g = oracle::bernoulli_graph(8, 0.4, rng);
    auto all = oracle::all_simple_paths(g, 0, 7);
    if (all.size() < 2) continue;
    auto set = select_paths(g, 0, 7, 2);
    const Path& first = set.paths[0];
    auto disjoint = [&](const Path& p) {
      for (std::size_t k = 1; k + 1 < p.size(); ++k) {
        if (std::find(first.begin() + 1, first.end() - 1, p[k]) != first.end() - 1) return false;
      }
      return true;
    };
    bool alternative = std::any_of(all.begin(), all.end(), [&](const Path& p) {
      return p != first && p.size() == first.size() && disjoint(p);
    });
    if (!alternative) continue;
    ASSERT_GE(set.size(), 2u);
    EXPECT_TRUE(disjoint(set.paths[1])) << to_edge_list(g);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(PathIsHonest, Basics) {
  CompromiseMask mask(3);
  mask.set(0);
  mask.set(2);
  EXPECT_TRUE(path_is_honest({0, 2}, mask));
  mask.set(1);
  EXPECT_FALSE(path_is_honest({0, 1, 2}, mask));
}

// Ten honest nodes and two shaded ones; routes that only touch honest
// nodes are honest, and anything through a shaded node is not.
TEST(PathIsHonest, SmallNetworkRoutes) {
  Graph g(12, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 0},
               {10, 0}, {10, 5}, {10, 7}, {11, 2}, {11, 8}, {11, 4}, {1, 6}, {3, 9}});
  CompromiseMask shaded(12);
  shaded.set(10);
  shaded.set(11);
  for (const auto& p : oracle::all_simple_paths(g, 0, 5)) {
    bool white = std::none_of(p.begin(), p.end(), [&](NodeId v) { return shaded[v]; });
    EXPECT_EQ(path_is_honest(p, shaded), white);
  }
}

}  // namespace
}  // namespace stranger

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

// Multipath selection by repeated least-cost search over node prices.
//
// Every node starts at cost 1. A path is priced by the sum of the costs of
// its intermediate nodes (the endpoints are free). After each search the
// intermediate nodes of the chosen path get 1 added to their cost, which
// pushes later searches towards unused relays.

#ifndef STRANGER_PATHSELECT_HPP
#define STRANGER_PATHSELECT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "stranger/graph.hpp"

namespace stranger {

using Path = std::vector<NodeId>;

struct NodeCosts {
  std::vector<std::uint64_t> cost;
};

struct PathSet {
  std::vector<Path> paths;
  std::size_t shortfall = 0;  // requested minus found
  NodeCosts costs;            // node prices after the last search

  std::size_t size() const noexcept { return paths.size(); }
  bool empty() const noexcept { return paths.empty(); }
  /// Longest path in hops (edges); 0 when empty.
  std::size_t longest_hops() const {
    std::size_t best = 0;
    for (const auto& path : paths) best = std::max(best, path.size() - 1);
    return best;
  }
};

/// Sum of intermediate-node costs.
inline std::uint64_t path_cost(const Path& path, const NodeCosts& costs) {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) total += costs.cost[path[i]];
  return total;
}

/// Simple path from a to b along existing edges.
inline bool is_simple_path(const Graph& g, const Path& path, NodeId a, NodeId b) {
  if (path.size() < 2 || path.front() != a || path.back() != b) return false;
  std::vector<bool> seen(g.node_count(), false);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= g.node_count() || seen[path[i]]) return false;
    seen[path[i]] = true;
    if (i > 0 && !g.has_edge(path[i - 1], path[i])) return false;
  }
  return true;
}

/// Minimum-cost simple a-b path under `costs`. Ties go to fewer hops, then
/// to the lexicographically smallest vertex sequence. Returns nullopt when
/// b is unreachable.
inline std::optional<Path> least_cost_path(const Graph& g, NodeId a, NodeId b, const NodeCosts& costs) {
  constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
  constexpr auto kNone = std::numeric_limits<NodeId>::max();
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> dist(n, kInf);
  std::vector<std::uint32_t> hops(n, 0);
  std::vector<NodeId> pred(n, kNone);
  std::vector<bool> settled(n, false);

  // Both chains have the same hop count; walk back in lockstep and keep the
  // earliest position where they differ.
  auto lex_less = [&](NodeId x, NodeId y) {
    NodeId dx = x, dy = y;
    while (x != y) {
      dx = x;
      dy = y;
      x = pred[x];
      y = pred[y];
    }
    return dx < dy;
  };

  using Entry = std::tuple<std::uint64_t, std::uint32_t, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[a] = 0;
  heap.emplace(0, 0, a);
  while (!heap.empty()) {
    auto [d, h, u] = heap.top();
    heap.pop();
    if (settled[u] || d != dist[u] || h != hops[u]) continue;
    settled[u] = true;
    if (u == b) break;
    for (NodeId w : g.neighbors(u)) {
      if (settled[w]) continue;
      std::uint64_t nd = d + (w == b ? 0 : costs.cost[w]);
      std::uint32_t nh = h + 1;
      if (nd < dist[w] || (nd == dist[w] && nh < hops[w])) {
        dist[w] = nd;
        hops[w] = nh;
        pred[w] = u;
        heap.emplace(nd, nh, w);
      } else if (nd == dist[w] && nh == hops[w] && lex_less(u, pred[w])) {
        pred[w] = u;
      }
    }
  }
  if (!settled[b]) return std::nullopt;
  Path path;
  for (NodeId v = b; v != kNone; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

/// Picks up to `requested` distinct a-b paths. A repeated least-cost path
/// still raises its relays' costs but is not kept; 3 * requested repeats in
/// a row end the search and the deficit is reported as shortfall. A
/// disconnected pair yields an empty set.
inline PathSet select_paths(const Graph& g, NodeId a, NodeId b, std::size_t requested) {
  if (a >= g.node_count() || b >= g.node_count()) throw std::invalid_argument("select_paths: node id out of range");
  if (a == b) throw std::invalid_argument("select_paths: endpoints must differ");

  PathSet out;
  out.costs.cost.assign(g.node_count(), 1);
  std::set<Path> seen;
  std::size_t repeats = 0;
  while (out.paths.size() < requested) {
    auto path = least_cost_path(g, a, b, out.costs);
    if (!path) break;
    for (std::size_t i = 1; i + 1 < path->size(); ++i) ++out.costs.cost[(*path)[i]];
    if (!seen.insert(*path).second) {
      if (++repeats >= 3 * requested) break;
      continue;
    }
    repeats = 0;
    out.paths.push_back(std::move(*path));
  }
  out.shortfall = requested - out.paths.size();
  return out;
}

/// No intermediate node is compromised. Endpoint flags are ignored.
inline bool path_is_honest(const Path& path, const CompromiseMask& mask) {
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (mask[path[i]]) return false;
  }
  return true;
}

}  // namespace stranger

#endif  // STRANGER_PATHSELECT_HPP

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

#ifndef STRANGER_GRAPH_HPP
#define STRANGER_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stranger {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph on dense node ids 0..N-1.
///
/// Stored in compressed form: the neighbours of `v` are
/// `targets_[offsets_[v] .. offsets_[v+1])`, sorted ascending. Edges are kept
/// as (u, v) pairs with u < v in lexicographic order, which is also the
/// edge-list file order.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds from an arbitrary edge list. Throws std::invalid_argument on
  /// self-loops, duplicate edges or out-of-range ids.
  Graph(std::size_t node_count, std::vector<Edge> edges)
      : node_count_(node_count) {
    for (auto& [u, v] : edges) {
      if (u == v) throw std::invalid_argument("graph: self-loop on node " + std::to_string(u));
      if (u >= node_count || v >= node_count) {
        throw std::invalid_argument("graph: node id out of range");
      }
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      throw std::invalid_argument("graph: duplicate edge");
    }
    edges_ = std::move(edges);

    std::vector<std::size_t> degree(node_count, 0);
    for (const auto& [u, v] : edges_) {
      ++degree[u];
      ++degree[v];
    }
    offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    targets_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so filling in order leaves every row sorted.
    for (const auto& [u, v] : edges_) targets_[cursor[u]++] = v;
    for (const auto& [u, v] : edges_) targets_[cursor[v]++] = u;
    for (std::size_t v = 0; v < node_count; ++v) {
      std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const noexcept {
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Number of nodes n_k having degree k.
struct DegreeHistogram {
  std::map<std::size_t, std::size_t> counts;

  std::size_t node_total() const {
    std::size_t n = 0;
    for (const auto& [k, nk] : counts) n += nk;
    return n;
  }
  std::size_t degree_total() const {
    std::size_t s = 0;
    for (const auto& [k, nk] : counts) s += k * nk;
    return s;
  }
  /// Degree with the most nodes; smallest such degree on ties.
  std::size_t peak() const {
    std::size_t best_k = 0, best_n = 0;
    for (const auto& [k, nk] : counts) {
      if (nk > best_n) {
        best_k = k;
        best_n = nk;
      }
    }
    return best_k;
  }
  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;
};

inline DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram h;
  for (NodeId v = 0; v < g.node_count(); ++v) ++h.counts[g.degree(v)];
  return h;
}

/// Connected components labelled 0.. in order of their lowest node id.
inline std::vector<std::uint32_t> component_labels(const Graph& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(g.node_count(), kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId root = 0; root < g.node_count(); ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

/// True iff every pair of vertices is joined by a path. The empty graph and
/// the single vertex both count as connected.
inline bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  if (g.edge_count() + 1 < g.node_count()) return false;
  auto label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](std::uint32_t c) { return c == 0; });
}

/// Per-node adversary control flags; true marks a compromised node.
class CompromiseMask {
 public:
  CompromiseMask() = default;
  explicit CompromiseMask(std::size_t node_count) : flags_(node_count, false) {}

  std::size_t size() const noexcept { return flags_.size(); }
  std::size_t count() const noexcept { return count_; }
  bool operator[](NodeId v) const { return flags_[v]; }

  void set(NodeId v, bool compromised = true) {
    if (flags_.at(v) == compromised) return;
    flags_[v] = compromised;
    if (compromised) {
      ++count_;
    } else {
      --count_;
    }
  }

  friend bool operator==(const CompromiseMask&, const CompromiseMask&) = default;

 private:
  std::vector<bool> flags_;
  std::size_t count_ = 0;
};

/// Subgraph on the surviving vertices. `original_id[i]` is the parent id of
/// local vertex i; survivors keep their relative order.
struct InducedSubgraph {
  Graph graph;
  std::vector<NodeId> original_id;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const CompromiseMask& removed) {
  if (removed.size() != g.node_count()) {
    throw std::invalid_argument("induced_subgraph: mask length differs from node count");
  }
  constexpr auto kGone = static_cast<NodeId>(-1);
  std::vector<NodeId> local(g.node_count(), kGone);
  InducedSubgraph out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!removed[v]) {
      local[v] = static_cast<NodeId>(out.original_id.size());
      out.original_id.push_back(v);
    }
  }
  std::vector<Edge> kept;
  for (const auto& [u, v] : g.edges()) {
    if (local[u] != kGone && local[v] != kGone) kept.emplace_back(local[u], local[v]);
  }
  out.graph = Graph(out.original_id.size(), std::move(kept));
  return out;
}

// Edge-list text format: "N E" header, then one "u v" line per edge with
// u < v, sorted lexicographically.

inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
  std::size_t n = 0, m = 0;
  if (!(is >> n >> m)) throw std::runtime_error("edge list: missing 'N E' header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    if (!(is >> u >> v)) {
      throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges, got " +
                               std::to_string(i));
    }
    if (u >= n || v >= n) throw std::runtime_error("edge list: node id out of range");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  std::string extra;
  if (is >> extra) throw std::runtime_error("edge list: trailing data after " + std::to_string(m) + " edges");
  return Graph(n, std::move(edges));
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace stranger

#endif  // STRANGER_GRAPH_HPP

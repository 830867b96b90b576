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

#ifndef STRANGER_GRAPHGEN_HPP
#define STRANGER_GRAPHGEN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stranger/analytics.hpp"
#include "stranger/graph.hpp"

namespace stranger {

namespace detail {

inline std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

inline Edge edge_from_key(std::uint64_t key) {
  return {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffULL)};
}

/// Draws `count` distinct unordered pairs by rejection. A self-pair or
/// repeated pair discards both endpoints and draws again.
template <class Generator>
std::unordered_set<std::uint64_t> sample_distinct_pairs(std::size_t n, std::uint64_t count,
                                                        Generator& gen) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  while (chosen.size() < count) {
    NodeId u = pick(gen);
    NodeId v = pick(gen);
    if (u == v) continue;
    chosen.insert(edge_key(u, v));
  }
  return chosen;
}

}  // namespace detail

inline std::uint64_t max_edges(std::size_t n) {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

/// Uniform random graph with exactly `edge_count` edges: every edge set of
/// that size is equally likely.
template <class Generator>
Graph gen_uniform(std::size_t n, std::uint64_t edge_count, Generator& gen) {
  if (n == 0) throw std::invalid_argument("gen_uniform: node count must be positive");
  const std::uint64_t limit = max_edges(n);
  if (edge_count > limit) {
    throw std::invalid_argument("gen_uniform: " + std::to_string(edge_count) +
                                " edges exceed the complete-graph bound " + std::to_string(limit));
  }
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  if (edge_count <= limit / 2) {
    for (std::uint64_t key : detail::sample_distinct_pairs(n, edge_count, gen)) {
      edges.push_back(detail::edge_from_key(key));
    }
  } else {
    // Dense: sample the missing pairs instead, which is the same distribution.
    auto missing = detail::sample_distinct_pairs(n, limit - edge_count, gen);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (!missing.contains(detail::edge_key(u, v))) edges.emplace_back(u, v);
      }
    }
  }
  return Graph(n, std::move(edges));
}

/// Target degree sequence of a truncated power-law graph.
struct PowerLawPlan {
  std::size_t node_count = 0;
  double gamma = 0.0;
  std::uint64_t k_min = 1;
  /// Rounded n_k for k = k_min, k_min+1, ..., N-1 (index 0 is k_min).
  std::vector<std::uint64_t> degree_counts;
  /// Target degree of each node, ascending with node id.
  std::vector<std::uint64_t> assigned_degrees;

  std::uint64_t degree_sum() const {
    return std::accumulate(assigned_degrees.begin(), assigned_degrees.end(), std::uint64_t{0});
  }
  std::uint64_t planned_edges() const { return degree_sum() / 2; }
  std::uint64_t count_at(std::uint64_t k) const {
    if (k < k_min || k - k_min >= degree_counts.size()) return 0;
    return degree_counts[k - k_min];
  }
};

/// Node counts n_k = N C k^-gamma over k in [k_min, N-1], rounded by largest
/// remainder (ties to smaller k) so they sum to N. Degrees are handed out in
/// node-id order; an odd degree sum is fixed by lowering the first
/// highest-degree node by one.
inline PowerLawPlan plan_powerlaw(std::size_t n, std::uint64_t k_min, double gamma) {
  if (k_min < 1) throw std::invalid_argument("plan_powerlaw: k_min must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("plan_powerlaw: gamma must be positive");
  if (k_min + 1 > n) throw std::invalid_argument("plan_powerlaw: k_min must be at most N-1");

  PowerLawPlan plan;
  plan.node_count = n;
  plan.gamma = gamma;
  plan.k_min = k_min;

  const std::size_t bins = n - k_min;
  std::vector<double> weight(bins);
  double norm = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    weight[i] = std::pow(static_cast<double>(k_min + i), -gamma);
    norm += weight[i];
  }
  plan.degree_counts.assign(bins, 0);
  std::vector<double> frac(bins);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    double expected = static_cast<double>(n) * weight[i] / norm;
    double whole = std::floor(expected);
    plan.degree_counts[i] = static_cast<std::uint64_t>(whole);
    frac[i] = expected - whole;
    assigned += plan.degree_counts[i];
  }
  std::vector<std::size_t> order(bins);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t j = 0; assigned < n; ++j, ++assigned) ++plan.degree_counts[order[j % bins]];

  plan.assigned_degrees.reserve(n);
  for (std::size_t i = 0; i < bins; ++i) {
    plan.assigned_degrees.insert(plan.assigned_degrees.end(), plan.degree_counts[i], k_min + i);
  }
  if (plan.degree_sum() % 2 == 1) {
    auto top = std::max_element(plan.assigned_degrees.begin(), plan.assigned_degrees.end());
    std::uint64_t k = *top;
    --*top;
    --plan.degree_counts[k - k_min];
    if (k - 1 >= k_min) ++plan.degree_counts[k - 1 - k_min];
  }
  return plan;
}

struct PowerLawFit {
  PowerLawPlan plan;
  analytics::GammaFit fit;
};

/// Plan whose degree sum covers at most `edge_goal` edges, as close to it as
/// the exponent allows. `fit` keeps the closed-form bisection result; the
/// plan's own gamma is re-bisected against the rounded degree sum, because
/// rounding empties most of the sparse high-degree tail, and a plan built
/// from the closed-form exponent falls 15-30% short of the goal.
inline PowerLawFit fit_powerlaw_plan(std::size_t n, std::uint64_t k_min, std::uint64_t edge_goal) {
  PowerLawFit out;
  out.fit = analytics::powerlaw_gamma(n, k_min, static_cast<double>(edge_goal));
  double lo = analytics::kGammaLow, hi = analytics::kGammaHigh;
  if (plan_powerlaw(n, k_min, lo).planned_edges() <= edge_goal) {
    hi = lo;
  } else {
    while (hi - lo > analytics::kGammaTolerance) {
      double mid = 0.5 * (lo + hi);
      if (plan_powerlaw(n, k_min, mid).planned_edges() > edge_goal) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  out.plan = plan_powerlaw(n, k_min, hi);
  return out;
}

struct PowerLawGraph {
  Graph graph;
  std::uint64_t dropped_stubs = 0;  // target degree the matcher could not place
  std::uint64_t draws = 0;
};

/// Pairs degree stubs at random. Each draw picks two remaining stubs; the
/// draw is rejected if they belong to the same node or the nodes are
/// already joined. The draw budget is 50 times the stub count, after which
/// leftover stubs are dropped, so no node ever exceeds its target degree.
template <class Generator>
PowerLawGraph gen_powerlaw(const PowerLawPlan& plan, Generator& gen) {
  const std::size_t n = plan.assigned_degrees.size();
  if (n != plan.node_count) throw std::invalid_argument("gen_powerlaw: plan degree list has wrong length");
  std::vector<NodeId> stubs;
  stubs.reserve(plan.degree_sum());
  for (NodeId v = 0; v < n; ++v) {
    if (plan.assigned_degrees[v] + 1 > n && plan.assigned_degrees[v] > 0) {
      throw std::invalid_argument("gen_powerlaw: assigned degree exceeds N-1");
    }
    stubs.insert(stubs.end(), plan.assigned_degrees[v], v);
  }

  PowerLawGraph out;
  const std::uint64_t budget = 50 * static_cast<std::uint64_t>(stubs.size());
  std::unordered_set<std::uint64_t> joined;
  joined.reserve(stubs.size());
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);

  std::uint64_t failures = 0, next_check = 1024;
  auto remove_stub = [&](std::size_t i) {
    stubs[i] = stubs.back();
    stubs.pop_back();
  };
  // True when some two distinct remaining nodes are not yet joined.
  auto pair_possible = [&] {
    std::vector<NodeId> open(stubs.begin(), stubs.end());
    std::sort(open.begin(), open.end());
    open.erase(std::unique(open.begin(), open.end()), open.end());
    if (open.size() > 4096) return true;
    for (std::size_t a = 0; a < open.size(); ++a) {
      for (std::size_t b = a + 1; b < open.size(); ++b) {
        if (!joined.contains(detail::edge_key(open[a], open[b]))) return true;
      }
    }
    return false;
  };

  while (stubs.size() >= 2 && out.draws < budget) {
    ++out.draws;
    std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
    std::size_t i = pick(gen);
    std::size_t j = pick(gen);
    NodeId u = stubs[i], v = stubs[j];
    if (u == v || joined.contains(detail::edge_key(u, v))) {
      if (++failures >= next_check) {
        if (!pair_possible()) break;
        next_check *= 2;
      }
      continue;
    }
    joined.insert(detail::edge_key(u, v));
    edges.emplace_back(u, v);
    remove_stub(std::max(i, j));
    remove_stub(std::min(i, j));
  }
  out.dropped_stubs = stubs.size();
  out.graph = Graph(n, std::move(edges));
  return out;
}

}  // namespace stranger

#endif  // STRANGER_GRAPHGEN_HPP

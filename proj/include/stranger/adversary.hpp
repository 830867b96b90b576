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

#ifndef STRANGER_ADVERSARY_HPP
#define STRANGER_ADVERSARY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stranger/graph.hpp"

namespace stranger {

enum class AdversaryKind { kRandom, kTargeted };

inline std::string_view to_string(AdversaryKind kind) {
  return kind == AdversaryKind::kRandom ? "random" : "targeted";
}

inline AdversaryKind parse_adversary(std::string_view name) {
  if (name == "random") return AdversaryKind::kRandom;
  if (name == "targeted") return AdversaryKind::kTargeted;
  throw std::invalid_argument("unknown adversary '" + std::string(name) + "'");
}

/// floor((1 - t) N), the hard cap on compromised nodes.
inline std::size_t compromised_count(std::size_t n, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("honest fraction t must lie in (0, 1]");
  // The epsilon keeps products like 0.4 * 10 from landing just under 4.
  auto c = static_cast<std::size_t>(std::floor((1.0 - t) * static_cast<double>(n) + 1e-9));
  return std::min(c, n);
}

/// Exactly floor((1-t) N) nodes, uniform without replacement (partial
/// Fisher-Yates over the id range).
template <class Generator>
CompromiseMask compromise_random(std::size_t n, double t, Generator& gen) {
  const std::size_t count = compromised_count(n, t);
  CompromiseMask mask(n);
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(ids[i], ids[pick(gen)]);
    mask.set(ids[i]);
  }
  return mask;
}

/// The `count` highest-degree nodes; equal degrees go to the lower id.
inline CompromiseMask compromise_targeted(const Graph& g, std::size_t count) {
  const std::size_t n = g.node_count();
  if (count > n) throw std::invalid_argument("compromise_targeted: count exceeds node count");
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(count), ids.end(),
                    [&](NodeId a, NodeId b) {
                      if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
                      return a < b;
                    });
  CompromiseMask mask(n);
  for (std::size_t i = 0; i < count; ++i) mask.set(ids[i]);
  return mask;
}

}  // namespace stranger

#endif  // STRANGER_ADVERSARY_HPP

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

#ifndef STRANGER_RNG_HPP
#define STRANGER_RNG_HPP

#include <cstdint>
#include <random>

namespace stranger {

/// Engine used everywhere a seeded generator is injected.
using Rng = std::mt19937_64;

/// One SplitMix64 output step applied to `x`.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for one Monte Carlo trial. Depends only on the master
/// seed and the trial index, never on scheduling. The master seed is mixed
/// before the index is folded in, so nearby master seeds (1, 2, 3, ...) give
/// unrelated trial streams instead of permutations of one another.
inline Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  return Rng(splitmix64(splitmix64(master_seed) ^ trial_index));
}

}  // namespace stranger

#endif  // STRANGER_RNG_HPP

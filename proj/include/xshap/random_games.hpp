/*
 * Copyright 2026 The xshap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Seeded random tabular fixtures, optionally with an axiom premise planted.

#ifndef XSHAP_RANDOM_GAMES_HPP
#define XSHAP_RANDOM_GAMES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "xshap/game_io.hpp"
#include "xshap/rng.hpp"

namespace xshap {

// Entries uniform on [-1, 1); entry 0 (the empty coalition) is 0 when
// `centered`.
std::vector<double> random_table(std::size_t n, RandomStream& rng, bool centered = true);

TabularPair random_pair(std::size_t n, std::uint64_t seed, bool centered = true);

// Both games in G with values in [0, 1): v(empty) = 0, every other entry
// uniform.
TabularPair random_score_pair(std::size_t n, std::uint64_t seed);

enum class Planted {
  kNone,
  kNullDatum,      // one datum with zero marginals in both games
  kNullAlgorithm,  // v_B = v_A
  kDuplicate,      // two interchangeable data
  kMimic,          // a datum i with v_B(S + i) = v_A(S)
};

std::string to_string(Planted p);

// random_pair() with the premise imposed on a seed-chosen datum (or data).
// kDuplicate needs n >= 2.
TabularPair planted_pair(std::size_t n, std::uint64_t seed, Planted premise);

}  // namespace xshap

#endif  // XSHAP_RANDOM_GAMES_HPP

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

// Game files.
//
// A game file is JSON. One game:
//   {"n": 2, "values": {"": 0, "0": 1, "1": 0, "0,1": 1}}
// A pair (algorithm, baseline):
//   {"n": 2, "v_a": {...}, "v_b": {...}}
// Keys are comma-separated, strictly ascending, zero-based player indices;
// the empty coalition is "". All 2^n keys must be present exactly once.

#ifndef XSHAP_GAME_IO_HPP
#define XSHAP_GAME_IO_HPP

#include <string>
#include <string_view>
#include <variant>

#include "xshap/game.hpp"

namespace xshap {

struct TabularPair {
  TabularGame algorithm;
  TabularGame baseline;

  GamePair as_pair() const;
};

using LoadedGame = std::variant<TabularGame, TabularPair>;

// Throws FormatError on malformed content, missing or duplicate keys, and
// GuardError when n exceeds the tabular guard.
LoadedGame load_tabular_game(std::string_view text);
LoadedGame load_tabular_game_file(const std::string& path);

// Parses one coalition key ("", "0", "0,3", ...) for n players.
Coalition parse_coalition_key(std::string_view key, std::size_t players);

std::string dump_tabular_game(const TabularGame& game);
std::string dump_tabular_pair(const TabularPair& pair);

}  // namespace xshap

#endif  // XSHAP_GAME_IO_HPP

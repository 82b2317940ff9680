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

#include "xshap/game_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "xshap/error.hpp"

namespace xshap {

using nlohmann::json;

GamePair TabularPair::as_pair() const {
  return GamePair(tabular(algorithm), tabular(baseline));
}

Coalition parse_coalition_key(std::string_view key, std::size_t players) {
  Coalition c(players);
  if (key.empty()) return c;
  std::size_t previous = 0;
  bool first = true;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = std::min(key.find(',', pos), key.size());
    const std::string_view token = key.substr(pos, comma - pos);
    std::size_t index = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw FormatError("bad coalition key \"" + std::string(key) + "\"");
    }
    if (index >= players) {
      throw FormatError("coalition key \"" + std::string(key) + "\" has index " +
                        std::to_string(index) + " >= n=" + std::to_string(players));
    }
    if (!first && index <= previous) {
      throw FormatError("coalition key \"" + std::string(key) +
                        "\" is not strictly ascending");
    }
    c.insert(index);
    previous = index;
    first = false;
    pos = comma + 1;
  }
  return c;
}

namespace {

json parse_rejecting_duplicates(std::string_view text) {
  // Keys seen so far, one set per open object.
  std::vector<std::set<std::string>> open;
  std::string duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open.emplace_back();
        break;
      case json::parse_event_t::object_end:
        if (!open.empty()) open.pop_back();
        break;
      case json::parse_event_t::key:
        if (!open.back().insert(parsed.get<std::string>()).second && duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default:
        break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), cb);
  } catch (const json::exception& e) {
    throw FormatError(std::string("game file is not valid JSON: ") + e.what());
  }
  if (!duplicate.empty()) throw FormatError("duplicate key \"" + duplicate + "\"");
  return doc;
}

TabularGame table_from_json(const json& values, std::size_t n, const char* section) {
  if (!values.is_object()) {
    throw FormatError(std::string("\"") + section + "\" must be an object");
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> table(count, 0.0);
  std::vector<bool> seen(count, false);
  for (const auto& [key, value] : values.items()) {
    const Coalition c = parse_coalition_key(key, n);
    if (!value.is_number()) {
      throw FormatError(std::string(section) + "[\"" + key + "\"] is not a number");
    }
    if (seen[c.mask()]) {
      throw FormatError(std::string(section) + " lists coalition {" + c.key() + "} twice");
    }
    seen[c.mask()] = true;
    table[c.mask()] = value.get<double>();
  }
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (!seen[mask]) {
      throw FormatError(std::string(section) + " is missing coalition \"" +
                        Coalition::from_mask(mask, n).key() + "\"");
    }
  }
  return TabularGame(n, std::move(table));
}

json table_to_json(const TabularGame& game) {
  json out = json::object();
  for (std::uint64_t mask = 0; mask < game.values().size(); ++mask) {
    out[Coalition::from_mask(mask, game.players()).key()] = game.at(mask);
  }
  return out;
}

}  // namespace

LoadedGame load_tabular_game(std::string_view text) {
  const json doc = parse_rejecting_duplicates(text);
  if (!doc.is_object()) throw FormatError("game file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) {
    throw FormatError("game file needs a non-negative integer \"n\"");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  if (n > kExactGuard) {
    throw GuardError("game file declares n=" + std::to_string(n) + " but tables are limited to n <= " +
                     std::to_string(kExactGuard));
  }
  const bool single = doc.contains("values");
  const bool pair = doc.contains("v_a") || doc.contains("v_b");
  if (single == pair) {
    throw FormatError("game file needs either \"values\" or both \"v_a\" and \"v_b\"");
  }
  if (single) return table_from_json(doc["values"], n, "values");
  if (!doc.contains("v_a") || !doc.contains("v_b")) {
    throw FormatError("pair game file needs both \"v_a\" and \"v_b\"");
  }
  return TabularPair{table_from_json(doc["v_a"], n, "v_a"), table_from_json(doc["v_b"], n, "v_b")};
}

LoadedGame load_tabular_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read game file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_tabular_game(buffer.str());
}

std::string dump_tabular_game(const TabularGame& game) {
  json doc{{"n", game.players()}, {"values", table_to_json(game)}};
  return doc.dump(2);
}

std::string dump_tabular_pair(const TabularPair& pair) {
  json doc{{"n", pair.algorithm.players()},
           {"v_a", table_to_json(pair.algorithm)},
           {"v_b", table_to_json(pair.baseline)}};
  return doc.dump(2);
}

}  // namespace xshap

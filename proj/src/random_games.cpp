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

#include "xshap/random_games.hpp"

#include "xshap/error.hpp"
#include "xshap/game.hpp"

namespace xshap {

namespace {

using Table = std::vector<double>;

void make_null(Table& t, std::uint64_t bit) {
  for (std::uint64_t mask = 0; mask < t.size(); ++mask) {
    if (mask & bit) t[mask] = t[mask ^ bit];
  }
}

void make_interchangeable(Table& t, std::uint64_t bi, std::uint64_t bj) {
  for (std::uint64_t mask = 0; mask < t.size(); ++mask) {
    if ((mask & bi) && !(mask & bj)) t[mask ^ bi ^ bj] = t[mask];
  }
}

}  // namespace

std::vector<double> random_table(std::size_t n, RandomStream& rng, bool centered) {
  if (n > kExactGuard) throw GuardError("random tables are limited to n <= 24");
  Table t(std::size_t{1} << n);
  for (double& x : t) x = 2.0 * rng.uniform() - 1.0;
  if (centered) t[0] = 0.0;
  return t;
}

TabularPair random_pair(std::size_t n, std::uint64_t seed, bool centered) {
  RandomStream rng(seed, 0);
  Table a = random_table(n, rng, centered);
  Table b = random_table(n, rng, centered);
  return TabularPair{TabularGame(n, std::move(a)), TabularGame(n, std::move(b))};
}

TabularPair random_score_pair(std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  Table a = random_table(n, rng, true);
  Table b = random_table(n, rng, true);
  for (Table* t : {&a, &b}) {
    for (double& x : *t) x = 0.5 * (x + 1.0);
    (*t)[0] = 0.0;
  }
  return TabularPair{TabularGame(n, std::move(a)), TabularGame(n, std::move(b))};
}

std::string to_string(Planted p) {
  switch (p) {
    case Planted::kNone: return "none";
    case Planted::kNullDatum: return "null-datum";
    case Planted::kNullAlgorithm: return "null-algorithm";
    case Planted::kDuplicate: return "duplicate";
    case Planted::kMimic: return "mimic";
  }
  return "unknown";
}

TabularPair planted_pair(std::size_t n, std::uint64_t seed, Planted premise) {
  RandomStream rng(seed, 0);
  Table a = random_table(n, rng);
  Table b = random_table(n, rng);
  RandomStream pick(seed, 1);
  switch (premise) {
    case Planted::kNone:
      break;
    case Planted::kNullDatum: {
      const std::uint64_t bit = std::uint64_t{1} << pick.below(static_cast<std::uint32_t>(n));
      make_null(a, bit);
      make_null(b, bit);
      break;
    }
    case Planted::kNullAlgorithm:
      b = a;
      break;
    case Planted::kDuplicate: {
      if (n < 2) throw DomainError("a duplicated datum needs n >= 2");
      const auto i = pick.below(static_cast<std::uint32_t>(n));
      auto j = pick.below(static_cast<std::uint32_t>(n - 1));
      if (j >= i) ++j;
      const std::uint64_t bi = std::uint64_t{1} << i;
      const std::uint64_t bj = std::uint64_t{1} << j;
      make_interchangeable(a, bi, bj);
      make_interchangeable(b, bi, bj);
      break;
    }
    case Planted::kMimic: {
      const std::uint64_t bit = std::uint64_t{1} << pick.below(static_cast<std::uint32_t>(n));
      for (std::uint64_t mask = 0; mask < b.size(); ++mask) {
        if (!(mask & bit)) b[mask | bit] = a[mask];
      }
      break;
    }
  }
  return TabularPair{TabularGame(n, std::move(a)), TabularGame(n, std::move(b))};
}

}  // namespace xshap

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

// Cooperative games over training datapoints.
//
// A game maps every coalition of the n players to a real-valued performance.
// Oracles are immutable once built and must be safe to evaluate from several
// threads at once; any caching they do is internal and race-free.

#ifndef XSHAP_GAME_HPP
#define XSHAP_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "xshap/coalition.hpp"

namespace xshap {

// Largest player count for which full 2^n tables are built.
inline constexpr std::size_t kExactGuard = 24;

// Incremental evaluation along a growing coalition, starting from the empty
// one. Oracles that can update their value cheaply when a single player joins
// (e.g. nearest-neighbour learners) override GameOracle::walk(); the values
// returned must be bit-identical to GameOracle::eval on the same coalition.
class PrefixWalk {
 public:
  virtual ~PrefixWalk() = default;
  // Adds `player` and returns the value of the enlarged coalition.
  virtual double add(std::size_t player) = 0;
  virtual const Coalition& coalition() const = 0;
};

class GameOracle {
 public:
  virtual ~GameOracle() = default;
  GameOracle() = default;

  virtual std::size_t players() const noexcept = 0;

  // v(s). Throws InvalidCoalitionError when s is over a different player
  // set, and wraps evaluation failures in an OracleError naming s.
  double eval(const Coalition& s) const;
  double eval(std::initializer_list<std::size_t> members) const;

  virtual std::unique_ptr<PrefixWalk> walk() const;

 protected:
  GameOracle(const GameOracle&) = default;
  GameOracle& operator=(const GameOracle&) = default;

  virtual double evaluate(const Coalition& s) const = 0;
};

using Game = std::shared_ptr<const GameOracle>;

// Walk that re-evaluates the oracle for every prefix.
class GenericWalk final : public PrefixWalk {
 public:
  explicit GenericWalk(const GameOracle& game);
  double add(std::size_t player) override;
  const Coalition& coalition() const override { return current_; }

 private:
  const GameOracle& game_;
  Coalition current_;
};

// Complete table over all 2^n coalitions, indexed by bitmask.
class TabularGame final : public GameOracle {
 public:
  TabularGame(std::size_t players, std::vector<double> values);

  // Evaluates every coalition of `game`. Requires game.players() <= guard.
  static TabularGame from_oracle(const GameOracle& game, std::size_t guard = kExactGuard);

  std::size_t players() const noexcept override { return players_; }
  double at(std::uint64_t mask) const { return values_[mask]; }
  std::span<const double> values() const noexcept { return values_; }

  friend TabularGame operator+(const TabularGame& a, const TabularGame& b);
  friend TabularGame operator*(double c, const TabularGame& g);

 protected:
  double evaluate(const Coalition& s) const override { return values_[s.mask()]; }

 private:
  std::size_t players_;
  std::vector<double> values_;
};

// Game defined by an arbitrary pure function of the coalition.
class FunctionGame final : public GameOracle {
 public:
  using Fn = std::function<double(const Coalition&)>;
  FunctionGame(std::size_t players, Fn fn);
  std::size_t players() const noexcept override { return players_; }

 protected:
  double evaluate(const Coalition& s) const override { return fn_(s); }

 private:
  std::size_t players_;
  Fn fn_;
};

// v(S) = |S|.
Game cardinality_game(std::size_t players);
// v(S) = c for every S, including the empty coalition.
Game constant_game(std::size_t players, double c);
inline Game zero_game(std::size_t players) { return constant_game(players, 0.0); }
Game tabular(TabularGame table);

// v(S) - v(empty). v(empty) is evaluated once, when the wrapper is built.
class CenteredGame final : public GameOracle {
 public:
  explicit CenteredGame(Game inner);
  std::size_t players() const noexcept override { return inner_->players(); }
  std::unique_ptr<PrefixWalk> walk() const override;
  double offset() const noexcept { return offset_; }
  const Game& inner() const noexcept { return inner_; }

 protected:
  double evaluate(const Coalition& s) const override;

 private:
  Game inner_;
  double offset_;
};

Game center(Game game);

// Caches every evaluated coalition (up to `capacity` entries). Walks bypass
// the cache since prefix coalitions of random permutations rarely repeat.
class MemoizedGame final : public GameOracle {
 public:
  explicit MemoizedGame(Game inner, std::size_t capacity = std::size_t{1} << 20);
  std::size_t players() const noexcept override { return inner_->players(); }
  std::unique_ptr<PrefixWalk> walk() const override { return inner_->walk(); }
  std::size_t cached() const;

 protected:
  double evaluate(const Coalition& s) const override;

 private:
  Game inner_;
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Coalition, double, CoalitionHash> cache_;
};

Game memoize(Game game, std::size_t capacity = std::size_t{1} << 20);

// (v_A, v_B): performance of the algorithm under study and of the baseline.
class GamePair {
 public:
  // Throws PairMismatchError when the player counts differ.
  GamePair(Game algorithm, Game baseline);

  const Game& algorithm_game() const noexcept { return algorithm_; }
  const Game& baseline_game() const noexcept { return baseline_; }
  std::size_t players() const noexcept { return algorithm_->players(); }

 private:
  Game algorithm_;
  Game baseline_;
};

GamePair center(const GamePair& pair);

// The (n+1)-player game whose extra player (index n) stands for the
// algorithm: eval(S + n) = v_A(S), eval(S) = v_B(S).
class LiftedGame final : public GameOracle {
 public:
  explicit LiftedGame(GamePair pair);
  std::size_t players() const noexcept override { return pair_.players() + 1; }
  std::size_t algorithm_player() const noexcept { return pair_.players(); }
  const GamePair& pair() const noexcept { return pair_; }

 protected:
  double evaluate(const Coalition& s) const override;

 private:
  GamePair pair_;
};

std::shared_ptr<const LiftedGame> lift(const GamePair& pair);

}  // namespace xshap

#endif  // XSHAP_GAME_HPP

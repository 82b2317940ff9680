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

#include "xshap/game.hpp"

#include <mutex>
#include <string>
#include <utility>

#include "xshap/error.hpp"

namespace xshap {

double GameOracle::eval(const Coalition& s) const {
  if (s.players() != players()) {
    throw InvalidCoalitionError("coalition over " + std::to_string(s.players()) +
                                " players evaluated on a game with " +
                                std::to_string(players()));
  }
  try {
    return evaluate(s);
  } catch (const OracleError&) {
    throw;
  } catch (const InvalidCoalitionError&) {
    throw;
  } catch (const std::exception& e) {
    throw OracleError(e.what(), s.key());
  }
}

double GameOracle::eval(std::initializer_list<std::size_t> members) const {
  return eval(Coalition::of(members, players()));
}

std::unique_ptr<PrefixWalk> GameOracle::walk() const {
  return std::make_unique<GenericWalk>(*this);
}

GenericWalk::GenericWalk(const GameOracle& game) : game_(game), current_(game.players()) {}

double GenericWalk::add(std::size_t player) {
  current_.insert(player);
  return game_.eval(current_);
}

// ---------------------------------------------------------------------------

TabularGame::TabularGame(std::size_t players, std::vector<double> values)
    : players_(players), values_(std::move(values)) {
  if (players > kExactGuard) {
    throw GuardError("tabular games are limited to n <= " + std::to_string(kExactGuard) +
                     " (got n=" + std::to_string(players) + ")");
  }
  if (values_.size() != (std::size_t{1} << players)) {
    throw DomainError("tabular game with n=" + std::to_string(players) + " needs " +
                      std::to_string(std::size_t{1} << players) + " values, got " +
                      std::to_string(values_.size()));
  }
}

TabularGame TabularGame::from_oracle(const GameOracle& game, std::size_t guard) {
  const std::size_t n = game.players();
  if (n > guard || n > kExactGuard) {
    throw GuardError("cannot tabulate a game with n=" + std::to_string(n) +
                     " (guard " + std::to_string(std::min(guard, kExactGuard)) + ")");
  }
  std::vector<double> values(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) {
    values[mask] = game.eval(Coalition::from_mask(mask, n));
  }
  return TabularGame(n, std::move(values));
}

TabularGame operator+(const TabularGame& a, const TabularGame& b) {
  if (a.players_ != b.players_) throw PairMismatchError("adding games of different sizes");
  std::vector<double> sum(a.values_.size());
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = a.values_[k] + b.values_[k];
  return TabularGame(a.players_, std::move(sum));
}

TabularGame operator*(double c, const TabularGame& g) {
  std::vector<double> out(g.values_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * g.values_[k];
  return TabularGame(g.players_, std::move(out));
}

FunctionGame::FunctionGame(std::size_t players, Fn fn) : players_(players), fn_(std::move(fn)) {}

Game cardinality_game(std::size_t players) {
  return std::make_shared<FunctionGame>(
      players, [](const Coalition& s) { return static_cast<double>(s.size()); });
}

Game constant_game(std::size_t players, double c) {
  return std::make_shared<FunctionGame>(players, [c](const Coalition&) { return c; });
}

Game tabular(TabularGame table) {
  return std::make_shared<const TabularGame>(std::move(table));
}

// ---------------------------------------------------------------------------

namespace {

class OffsetWalk final : public PrefixWalk {
 public:
  OffsetWalk(std::unique_ptr<PrefixWalk> inner, double offset)
      : inner_(std::move(inner)), offset_(offset) {}
  double add(std::size_t player) override { return inner_->add(player) - offset_; }
  const Coalition& coalition() const override { return inner_->coalition(); }

 private:
  std::unique_ptr<PrefixWalk> inner_;
  double offset_;
};

}  // namespace

CenteredGame::CenteredGame(Game inner)
    : inner_(std::move(inner)), offset_(inner_->eval(Coalition(inner_->players()))) {}

double CenteredGame::evaluate(const Coalition& s) const {
  if (s.empty()) return 0.0;
  return inner_->eval(s) - offset_;
}

std::unique_ptr<PrefixWalk> CenteredGame::walk() const {
  return std::make_unique<OffsetWalk>(inner_->walk(), offset_);
}

Game center(Game game) {
  return std::make_shared<const CenteredGame>(std::move(game));
}

// ---------------------------------------------------------------------------

MemoizedGame::MemoizedGame(Game inner, std::size_t capacity)
    : inner_(std::move(inner)), capacity_(capacity) {}

double MemoizedGame::evaluate(const Coalition& s) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  }
  const double value = inner_->eval(s);
  std::unique_lock lock(mutex_);
  if (cache_.size() < capacity_) {
    // A concurrent writer may have inserted first; keep the earlier entry.
    auto [it, inserted] = cache_.emplace(s, value);
    return it->second;
  }
  if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  return value;
}

std::size_t MemoizedGame::cached() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

Game memoize(Game game, std::size_t capacity) {
  return std::make_shared<const MemoizedGame>(std::move(game), capacity);
}

// ---------------------------------------------------------------------------

GamePair::GamePair(Game algorithm, Game baseline)
    : algorithm_(std::move(algorithm)), baseline_(std::move(baseline)) {
  if (!algorithm_ || !baseline_) throw DomainError("game pair needs two games");
  if (algorithm_->players() != baseline_->players()) {
    throw PairMismatchError("v_A has n=" + std::to_string(algorithm_->players()) +
                            " but v_B has n=" + std::to_string(baseline_->players()));
  }
}

GamePair center(const GamePair& pair) {
  return GamePair(center(pair.algorithm_game()), center(pair.baseline_game()));
}

LiftedGame::LiftedGame(GamePair pair) : pair_(std::move(pair)) {}

double LiftedGame::evaluate(const Coalition& s) const {
  const std::size_t n = pair_.players();
  const Coalition data = s.restricted(n);
  return s.contains(n) ? pair_.algorithm_game()->eval(data)
                       : pair_.baseline_game()->eval(data);
}

std::shared_ptr<const LiftedGame> lift(const GamePair& pair) {
  return std::make_shared<const LiftedGame>(pair);
}

}  // namespace xshap

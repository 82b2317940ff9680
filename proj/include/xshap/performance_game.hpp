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

#ifndef XSHAP_PERFORMANCE_GAME_HPP
#define XSHAP_PERFORMANCE_GAME_HPP

#include <memory>

#include "xshap/dataset.hpp"
#include "xshap/game.hpp"
#include "xshap/learners.hpp"

namespace xshap {

// v(S) = score(train(spec, S), test, metric), without caching. Majority
// vote and kNN provide incremental walks that update the test-set tallies
// as each training point arrives instead of retraining.
class LearnerGame final : public GameOracle {
 public:
  // Throws DomainError on incompatible feature dimensions, an empty test
  // set, or an equity metric over untagged test points.
  LearnerGame(LearnerSpec spec, Dataset train, Dataset test, Metric metric);

  std::size_t players() const noexcept override { return train_.size(); }
  std::unique_ptr<PrefixWalk> walk() const override;

  const LearnerSpec& spec() const noexcept { return spec_; }
  const Dataset& train_set() const noexcept { return train_; }
  const Dataset& test_set() const noexcept { return test_; }
  const ScoreTally& tally() const noexcept { return tally_; }

 protected:
  double evaluate(const Coalition& s) const override;

 private:
  LearnerSpec spec_;
  Dataset train_;
  Dataset test_;
  Metric metric_;
  ScoreTally tally_;
};

// Memoized LearnerGame.
Game performance_game(const LearnerSpec& spec, const Dataset& train, const Dataset& test,
                      const Metric& metric);

}  // namespace xshap

#endif  // XSHAP_PERFORMANCE_GAME_HPP

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

#include "xshap/performance_game.hpp"

#include <algorithm>
#include <utility>

#include "xshap/error.hpp"

namespace xshap {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    d += diff * diff;
  }
  return d;
}

// Shared bookkeeping: current prediction per test point and the resulting
// correct counts per subgroup. Everything starts at the empty model (class 0).
class TallyState {
 public:
  explicit TallyState(const LearnerGame& game)
      : game_(game),
        prediction_(game.test_set().size(), 0),
        correct_(game.tally().groups(), 0) {
    const Dataset& test = game.test_set();
    for (std::size_t t = 0; t < test.size(); ++t) {
      if (test.label(t) == 0) ++correct_[game.tally().group_of(t)];
    }
  }

  void set_prediction(std::size_t t, int label) {
    const int old = prediction_[t];
    if (old == label) return;
    const int truth = game_.test_set().label(t);
    const std::size_t g = game_.tally().group_of(t);
    if (old == truth) --correct_[g];
    if (label == truth) ++correct_[g];
    prediction_[t] = label;
  }

  double value() const { return game_.tally().score(correct_); }

 private:
  const LearnerGame& game_;
  std::vector<int> prediction_;
  std::vector<std::size_t> correct_;
};

class MajorityWalk final : public PrefixWalk {
 public:
  explicit MajorityWalk(const LearnerGame& game)
      : game_(game),
        state_(game),
        counts_(std::max<std::size_t>(game.train_set().classes(), 1), 0),
        coalition_(game.players()) {}

  double add(std::size_t player) override {
    coalition_.insert(player);
    ++counts_[static_cast<std::size_t>(game_.train_set().label(player))];
    const int label = static_cast<int>(std::max_element(counts_.begin(), counts_.end()) -
                                       counts_.begin());
    if (label != current_) {
      for (std::size_t t = 0; t < game_.test_set().size(); ++t) state_.set_prediction(t, label);
      current_ = label;
    }
    return state_.value();
  }

  const Coalition& coalition() const override { return coalition_; }

 private:
  const LearnerGame& game_;
  TallyState state_;
  std::vector<std::size_t> counts_;
  int current_ = 0;
  Coalition coalition_;
};

class KnnWalk final : public PrefixWalk {
 public:
  KnnWalk(const LearnerGame& game, std::size_t k)
      : game_(game),
        k_(k),
        state_(game),
        neighbors_(game.test_set().size()),
        coalition_(game.players()) {
    for (auto& list : neighbors_) list.reserve(k + 1);
  }

  double add(std::size_t player) override {
    coalition_.insert(player);
    const Dataset& train = game_.train_set();
    const Dataset& test = game_.test_set();
    const auto x = train.features(player);
    std::vector<int> votes;
    votes.reserve(k_);
    for (std::size_t t = 0; t < test.size(); ++t) {
      auto& list = neighbors_[t];
      const std::pair<double, std::size_t> candidate{squared_distance(x, test.features(t)), player};
      if (list.size() == k_ && !(candidate < list.back())) continue;
      list.insert(std::upper_bound(list.begin(), list.end(), candidate), candidate);
      if (list.size() > k_) list.pop_back();
      votes.clear();
      for (const auto& [d, i] : list) votes.push_back(train.label(i));
      state_.set_prediction(t, majority_label(votes, train.classes()));
    }
    return state_.value();
  }

  const Coalition& coalition() const override { return coalition_; }

 private:
  const LearnerGame& game_;
  std::size_t k_;
  TallyState state_;
  // Per test point: the k nearest training points so far, ordered by
  // (squared distance, training index).
  std::vector<std::vector<std::pair<double, std::size_t>>> neighbors_;
  Coalition coalition_;
};

}  // namespace

LearnerGame::LearnerGame(LearnerSpec spec, Dataset train, Dataset test, Metric metric)
    : spec_(std::move(spec)),
      train_(std::move(train)),
      test_(std::move(test)),
      metric_(metric),
      tally_(test_, metric_) {
  validate(spec_);
  if (train_.dims() != test_.dims()) {
    throw DomainError("train set has " + std::to_string(train_.dims()) +
                      " features but test set has " + std::to_string(test_.dims()));
  }
}

double LearnerGame::evaluate(const Coalition& s) const {
  const std::vector<std::size_t> members = s.members();
  return score(train(spec_, train_, members), test_, metric_);
}

std::unique_ptr<PrefixWalk> LearnerGame::walk() const {
  if (std::holds_alternative<MajorityVote>(spec_)) return std::make_unique<MajorityWalk>(*this);
  if (const auto* knn = std::get_if<Knn>(&spec_)) return std::make_unique<KnnWalk>(*this, knn->k);
  return GameOracle::walk();
}

Game performance_game(const LearnerSpec& spec, const Dataset& train, const Dataset& test,
                      const Metric& metric) {
  return memoize(std::make_shared<const LearnerGame>(spec, train, test, metric));
}

}  // namespace xshap

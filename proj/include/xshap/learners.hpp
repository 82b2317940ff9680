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

// Deterministic learners and the metrics used to score them.
//
// Rules shared by every learner:
//  - training on the empty subset yields the constant class-0 predictor;
//  - ties between classes go to the lower class id;
//  - kNN ranks neighbours by (squared Euclidean distance, training index), so
//    equidistant points resolve to the lower index; with fewer than k
//    points available it votes over all of them;
//  - logistic regression is multinomial, zero-initialised, and trained by
//    full-batch gradient descent for a fixed number of iterations.

#ifndef XSHAP_LEARNERS_HPP
#define XSHAP_LEARNERS_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xshap/dataset.hpp"

namespace xshap {

struct MajorityVote {};

struct Knn {
  std::size_t k = 1;
};

struct LogisticRegression {
  double learning_rate = 0.1;
  std::size_t iterations = 500;
  double l2 = 0.0;
};

using LearnerSpec = std::variant<MajorityVote, Knn, LogisticRegression>;

// Throws DomainError on k = 0, zero iterations, or a non-positive rate.
void validate(const LearnerSpec& spec);

// "majority", "knn:k=3", "logreg:lr=0.1,iters=500,l2=0". Throws DomainError.
LearnerSpec parse_learner(std::string_view text);
std::string to_string(const LearnerSpec& spec);

class Model {
 public:
  struct Constant {
    int label = 0;
  };
  struct Neighbors {
    std::size_t k = 1;
    std::size_t classes = 0;
    Dataset points{0};
  };
  struct Linear {
    std::size_t classes = 0;
    std::size_t dims = 0;
    std::vector<double> weights;  // classes x (dims + 1), bias last
  };

  Model(std::size_t dims, std::variant<Constant, Neighbors, Linear> body)
      : dims_(dims), body_(std::move(body)) {}

  std::size_t dims() const noexcept { return dims_; }
  const auto& body() const noexcept { return body_; }

 private:
  std::size_t dims_;
  std::variant<Constant, Neighbors, Linear> body_;
};

// Trains on the points of `data` selected by `subset`. The class count is
// taken from the whole of `data`, so models trained on different subsets
// share one label space.
Model train(const LearnerSpec& spec, const Dataset& data, std::span<const std::size_t> subset);
Model train(const LearnerSpec& spec, const Dataset& data);

// Throws DomainError on a feature-dimension mismatch.
int predict(const Model& model, std::span<const double> features);

// Majority label of `labels` (ties to the lower class); 0 for none.
int majority_label(std::span<const int> labels, std::size_t classes);

// --- metrics ---------------------------------------------------------------

enum class MetricKind { kAccuracy, kEquity };

struct Metric {
  MetricKind kind = MetricKind::kAccuracy;
};

Metric parse_metric(std::string_view text);
std::string to_string(const Metric& metric);

// 1 - (max accuracy - min accuracy) over subgroups. Throws DomainError on an
// empty map.
double equity(const std::map<std::string, double>& subgroup_accuracy);

// Correct-prediction tallies per subgroup of a fixed test set. Both the batch
// score and the incremental walks reduce to these counts.
class ScoreTally {
 public:
  ScoreTally(const Dataset& test, const Metric& metric);

  std::size_t groups() const noexcept { return totals_.size(); }
  std::size_t group_of(std::size_t test_index) const { return group_index_[test_index]; }
  std::size_t test_size() const noexcept { return group_index_.size(); }

  double score(std::span<const std::size_t> correct_per_group) const;

 private:
  Metric metric_;
  std::vector<std::string> names_;  // sorted
  std::vector<std::size_t> totals_;
  std::vector<std::size_t> group_index_;
};

// Fraction correct (accuracy) or equity of subgroup accuracies. Throws
// DomainError on an empty test set, or for equity when a test point has no
// subgroup tag.
double score(const Model& model, const Dataset& test, const Metric& metric);

}  // namespace xshap

#endif  // XSHAP_LEARNERS_HPP

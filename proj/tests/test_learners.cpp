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

#include <gtest/gtest.h>

#include <cmath>

#include "xshap/dataset.hpp"
#include "xshap/error.hpp"
#include "xshap/learners.hpp"

namespace xshap {
namespace {

Dataset points(std::initializer_list<std::pair<double, int>> rows) {
  Dataset d(1);
  for (const auto& [x, y] : rows) d.add({x}, y);
  return d;
}

TEST(Dataset, Basics) {
  Dataset d(2);
  d.add({0.0, 1.0}, 2, "a");
  d.add({1.0, 0.5}, 0);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.classes(), 3u);
  EXPECT_EQ(d.features(1)[1], 0.5);
  EXPECT_FALSE(d.fully_tagged());
  EXPECT_THROW(d.add({1.0}, 0), DomainError);
  EXPECT_THROW(d.add({1.0, 2.0}, -1), DomainError);
  const std::vector<std::size_t> pick{1};
  EXPECT_EQ(d.subset(pick).label(0), 0);
}

TEST(Csv, ParsesLabelsFeaturesAndSubgroups) {
  const Dataset d = parse_csv("x,group,label,y\n0.5,a,1,2\n\"1.5\",b,0,-1\n",
                              CsvOptions{"label", "group"});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.dims(), 2u);
  EXPECT_EQ(d.features(0)[0], 0.5);
  EXPECT_EQ(d.features(0)[1], 2.0);
  EXPECT_EQ(d.features(1)[0], 1.5);
  EXPECT_EQ(d.label(0), 1);
  EXPECT_EQ(*d.subgroup(1), "b");
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_csv("", {}), FormatError);
  EXPECT_THROW(parse_csv("x,y\n1,2\n", {}), FormatError);
  EXPECT_THROW(parse_csv("x,label\n1\n", {}), FormatError);
  EXPECT_THROW(parse_csv("x,label\nfoo,1\n", {}), FormatError);
  EXPECT_THROW(parse_csv("x,label\n1,0.5\n", {}), FormatError);
  EXPECT_THROW(parse_csv("x,label\n1,-1\n", {}), FormatError);
  EXPECT_THROW(parse_csv("x,label\n1,1\n", CsvOptions{"label", "g"}), FormatError);
  EXPECT_THROW(load_csv("/nonexistent/file.csv", {}), FormatError);
}

TEST(Csv, RoundTrip) {
  Dataset d(2);
  d.add({0.1, 1.0 / 3.0}, 1, "g1");
  d.add({-2.5, 1e-17}, 0, "g2");
  const CsvOptions opts{"label", "group"};
  const Dataset back = parse_csv(to_csv(d, opts), opts);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.features(0)[1], 1.0 / 3.0);
  EXPECT_EQ(back.features(1)[1], 1e-17);
  EXPECT_EQ(*back.subgroup(1), "g2");
}

TEST(LearnerSpec, ParseAndPrint) {
  EXPECT_TRUE(std::holds_alternative<MajorityVote>(parse_learner("majority")));
  EXPECT_EQ(std::get<Knn>(parse_learner("knn:k=3")).k, 3u);
  EXPECT_EQ(std::get<Knn>(parse_learner("knn")).k, 1u);
  const auto lr = std::get<LogisticRegression>(parse_learner("logreg:lr=0.5,iters=20,l2=0.1"));
  EXPECT_EQ(lr.learning_rate, 0.5);
  EXPECT_EQ(lr.iterations, 20u);
  EXPECT_EQ(lr.l2, 0.1);
  EXPECT_EQ(to_string(parse_learner("knn:k=5")), "knn:k=5");
  EXPECT_THROW(parse_learner("forest"), DomainError);
  EXPECT_THROW(parse_learner("knn:k=0"), DomainError);
  EXPECT_THROW(parse_learner("knn:j=2"), DomainError);
  EXPECT_THROW(parse_learner("logreg:lr=0"), DomainError);
  EXPECT_THROW(parse_learner("logreg:iters=0"), DomainError);
  EXPECT_THROW(parse_learner("knn:k"), DomainError);
}

TEST(Train, MajorityVote) {
  const Dataset d = points({{0.0, 0}, {0.0, 0}, {0.0, 1}});
  EXPECT_EQ(predict(train(MajorityVote{}, d), std::vector<double>{5.0}), 0);
  const Dataset tie = points({{0.0, 0}, {0.0, 1}});
  EXPECT_EQ(predict(train(MajorityVote{}, tie), std::vector<double>{5.0}), 0);
  const Dataset ones = points({{0.0, 1}, {0.0, 1}, {0.0, 0}});
  EXPECT_EQ(predict(train(MajorityVote{}, ones), std::vector<double>{5.0}), 1);
}

TEST(Train, EmptySubsetPredictsClassZero) {
  const Dataset d = points({{0.0, 1}, {1.0, 1}});
  for (const LearnerSpec& spec : {LearnerSpec{MajorityVote{}}, LearnerSpec{Knn{3}},
                                  LearnerSpec{LogisticRegression{}}}) {
    const Model m = train(spec, d, std::span<const std::size_t>{});
    EXPECT_EQ(predict(m, std::vector<double>{0.0}), 0);
  }
}

TEST(Train, KnnWithFewerPointsThanK) {
  const Dataset d = points({{0.1, 1}, {0.2, 1}, {0.9, 0}});
  const std::vector<std::size_t> two{0, 2};
  const Model m = train(Knn{3}, d, two);
  // Neighbours {0.1 -> 1, 0.9 -> 0}: a 1-1 tie goes to class 0.
  EXPECT_EQ(predict(m, std::vector<double>{0.15}), 0);
}

TEST(Train, SubsetErrors) {
  const Dataset d = points({{0.1, 1}, {0.2, 1}});
  const std::vector<std::size_t> dup{0, 0};
  const std::vector<std::size_t> out{2};
  EXPECT_THROW(train(Knn{1}, d, dup), DomainError);
  EXPECT_THROW(train(Knn{1}, d, out), DomainError);
}

TEST(Predict, NearestNeighbour) {
  const Dataset d = points({{0.1, 0}, {0.9, 1}});
  EXPECT_EQ(predict(train(Knn{1}, d), std::vector<double>{0.2}), 0);
  EXPECT_EQ(predict(train(Knn{1}, d), std::vector<double>{0.8}), 1);
}

TEST(Predict, ThreeNearestNeighbours) {
  const Dataset d = points({{0.1, 0}, {0.2, 0}, {0.9, 1}});
  EXPECT_EQ(predict(train(Knn{3}, d), std::vector<double>{0.85}), 0);
}

TEST(Predict, DistanceTiesGoToLowerIndex) {
  const Dataset d = points({{0.0, 1}, {1.0, 0}});
  EXPECT_EQ(predict(train(Knn{1}, d), std::vector<double>{0.5}), 1);
}

TEST(Predict, LogisticRegressionSeparable) {
  Dataset d(1);
  for (int k = 0; k < 20; ++k) d.add({-1.0}, 0);
  for (int k = 0; k < 20; ++k) d.add({1.0}, 1);
  const Model m = train(LogisticRegression{0.1, 500, 0.0}, d);
  EXPECT_EQ(predict(m, std::vector<double>{0.5}), 1);
  EXPECT_EQ(predict(m, std::vector<double>{-0.5}), 0);
}

TEST(Predict, DimensionMismatch) {
  const Dataset d = points({{0.1, 0}});
  EXPECT_THROW(predict(train(Knn{1}, d), std::vector<double>{0.1, 0.2}), DomainError);
}

TEST(Predict, DeterministicAcrossTrainings) {
  Dataset d(2);
  for (int k = 0; k < 30; ++k) {
    d.add({std::sin(k * 1.3), std::cos(k * 0.7)}, k % 3);
  }
  const LearnerSpec specs[] = {Knn{3}, LogisticRegression{0.2, 100, 0.01}, MajorityVote{}};
  for (const auto& spec : specs) {
    const Model a = train(spec, d);
    const Model b = train(spec, d);
    for (int q = 0; q < 20; ++q) {
      const std::vector<double> x{q * 0.1 - 1.0, 0.3 - q * 0.05};
      EXPECT_EQ(predict(a, x), predict(b, x));
    }
  }
}

TEST(Score, Accuracy) {
  const Dataset d = points({{0.1, 0}, {0.9, 1}});
  EXPECT_EQ(score(train(Knn{1}, d), d, Metric{}), 1.0);
  const Dataset balanced = points({{0.1, 0}, {0.2, 1}, {0.3, 0}, {0.4, 1}});
  const Model constant = train(MajorityVote{}, balanced, std::span<const std::size_t>{});
  EXPECT_EQ(score(constant, balanced, Metric{}), 0.5);
  EXPECT_THROW(score(constant, Dataset(1), Metric{}), DomainError);
}

TEST(Score, EquityRequiresTags) {
  Dataset test(1);
  test.add({0.1}, 0, "a");
  test.add({0.9}, 1);
  const Model m = train(MajorityVote{}, test);
  EXPECT_THROW(score(m, test, Metric{MetricKind::kEquity}), DomainError);
}

TEST(Score, EquityOfSubgroupAccuracies) {
  Dataset test(1);
  test.add({0.1}, 0, "a");
  test.add({0.2}, 0, "a");
  test.add({0.8}, 1, "b");
  test.add({0.9}, 0, "b");
  const Model constant = train(MajorityVote{}, test, std::span<const std::size_t>{});
  // Group a: 2/2 correct, group b: 1/2 correct.
  EXPECT_EQ(score(constant, test, Metric{MetricKind::kEquity}), 0.5);
}

TEST(Equity, Examples) {
  EXPECT_EQ(equity({{"a", 0.8}, {"b", 0.8}, {"c", 0.8}}), 1.0);
  EXPECT_EQ(equity({{"g1", 1.0}, {"g2", 0.0}}), 0.0);
  EXPECT_EQ(equity({{"w", 0.95}, {"x", 0.9}, {"y", 0.8}, {"z", 0.721}}), 0.771);
  EXPECT_THROW(equity({}), DomainError);
}

TEST(Metric, Parse) {
  EXPECT_EQ(parse_metric("accuracy").kind, MetricKind::kAccuracy);
  EXPECT_EQ(parse_metric("equity").kind, MetricKind::kEquity);
  EXPECT_EQ(to_string(parse_metric("equity")), "equity");
  EXPECT_THROW(parse_metric("f1"), DomainError);
}

}  // namespace
}  // namespace xshap

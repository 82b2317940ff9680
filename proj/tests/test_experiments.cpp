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

#include "oracle.hpp"
#include "xshap/error.hpp"
#include "xshap/experiments.hpp"
#include "xshap/performance_game.hpp"

namespace xshap {
namespace {

TEST(Intervals, TwoCells) {
  const IntervalProblem p = make_interval_problem(2, 5);
  ASSERT_EQ(p.boundaries.size(), 3u);
  EXPECT_EQ(p.boundaries[1], 0.5);
  EXPECT_EQ(p.label_at(0.25), p.starting_label);
  EXPECT_EQ(p.label_at(0.75), 1 - p.starting_label);
  EXPECT_EQ(p.label_at(0.0), p.starting_label);
  EXPECT_EQ(p.label_at(1.0), 1 - p.starting_label);
  EXPECT_DOUBLE_EQ(p.boundary_distance(0.4), 0.1);
}

TEST(Intervals, StartingLabelDependsOnSeed) {
  bool seen[2] = {false, false};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    seen[make_interval_problem(4, seed).starting_label] = true;
  }
  EXPECT_TRUE(seen[0] && seen[1]);
}

TEST(Intervals, Errors) {
  EXPECT_THROW(gen_intervals(3, 10, 0), DomainError);
  EXPECT_THROW(gen_intervals(0, 10, 0), DomainError);
  EXPECT_THROW(gen_intervals(2, 0, 0), DomainError);
  EXPECT_THROW(gen_intervals(2, 10, 0, IntervalOptions{201}), DomainError);
  EXPECT_THROW(make_interval_problem(4, 0, 0.5), DomainError);
}

TEST(Intervals, BalancedTestAndConsistentTrainLabels) {
  for (std::size_t cells : {2u, 4u, 6u, 8u, 16u}) {
    for (double jitter : {0.0, 0.3}) {
      const IntervalInstance inst = gen_intervals(cells, 300, cells, IntervalOptions{200, jitter});
      std::size_t ones = 0;
      for (std::size_t t = 0; t < inst.test.size(); ++t) {
        ones += inst.test.label(t) == 1;
        EXPECT_EQ(inst.test.label(t), inst.problem.label_at(inst.test.features(t)[0]));
      }
      EXPECT_EQ(inst.test.size(), 200u);
      EXPECT_EQ(ones, 100u);
      for (std::size_t i = 0; i < inst.train.size(); ++i) {
        EXPECT_EQ(inst.train.label(i), inst.problem.label_at(inst.train.features(i)[0]));
      }
      double measure0 = 0.0;
      for (std::size_t c = 0; c < cells; ++c) {
        if (inst.problem.label_at(0.5 * (inst.problem.boundaries[c] +
                                         inst.problem.boundaries[c + 1])) == 0) {
          measure0 += inst.problem.boundaries[c + 1] - inst.problem.boundaries[c];
        }
      }
      EXPECT_NEAR(measure0, 0.5, 1e-12);
    }
  }
}

TEST(Intervals, MajorityBaselineScoresHalf) {
  const IntervalInstance inst = gen_intervals(8, 50, 2);
  const Game g = performance_game(MajorityVote{}, inst.train, inst.test, Metric{});
  EXPECT_EQ(g->eval(Coalition::full(50)), 0.5);
  EXPECT_EQ(g->eval(Coalition(50)), 0.5);
}

TEST(Intervals, Deterministic) {
  const IntervalInstance a = gen_intervals(6, 40, 9);
  const IntervalInstance b = gen_intervals(6, 40, 9);
  EXPECT_EQ(to_csv(a.train, {}), to_csv(b.train, {}));
  EXPECT_EQ(to_csv(a.test, {}), to_csv(b.test, {}));
  EXPECT_NE(to_csv(a.train, {}), to_csv(gen_intervals(6, 40, 10).train, {}));
}

TEST(Curve, CardinalityGame) {
  const auto curve = performance_curve(*cardinality_game(12), 50, 1);
  ASSERT_EQ(curve.size(), 13u);
  for (const auto& p : curve) {
    EXPECT_EQ(p.mean, static_cast<double>(p.size));
    EXPECT_LE(p.samples, 50u);
  }
  EXPECT_EQ(curve[0].samples, 1u);
  EXPECT_EQ(curve[1].samples, 12u);
  EXPECT_EQ(curve[6].samples, 50u);
}

TEST(Curve, ConstantGame) {
  for (const auto& p : performance_curve(*constant_game(9, 0.5), 10, 0)) {
    EXPECT_EQ(p.mean, 0.5);
  }
}

TEST(Curve, SampledSubsetsAreDistinctAndDeterministic) {
  const auto a = performance_curve(*cardinality_game(30), 20, 4);
  const auto b = performance_curve(*cardinality_game(30), 20, 4);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].mean, b[k].mean);
    EXPECT_EQ(a[k].samples, std::min<std::size_t>(20, k == 0 || k == 30 ? 1 : k == 1 || k == 29 ? 30 : 20));
  }
  EXPECT_THROW(performance_curve(*cardinality_game(3), 0, 0), DomainError);
}

TEST(Curve, AreaApproximatesAlgorithmValueWhenSampled) {
  const IntervalInstance inst = gen_intervals(4, 14, 6, IntervalOptions{60});
  const GamePair pair = learner_pair(LearnerPairSpec{Knn{1}, MajorityVote{}, Metric{}},
                                     inst.train, inst.test);
  const double exact = *extended_shapley(pair).algorithm_value;
  EXPECT_NEAR(curve_area(performance_curves(pair, 1u << 14, 0)), exact, 1e-9);
  EXPECT_NEAR(curve_area(performance_curves(pair, 400, 0)), exact, 0.02);
}

TEST(PointValue, SingleExactRepetition) {
  const IntervalProblem p = make_interval_problem(2, 1);
  const IntervalInstance inst = gen_intervals(2, 10, 1, IntervalOptions{20});
  const LearnerPairSpec spec{Knn{1}, MajorityVote{}, Metric{}};
  PointValueOptions opts;
  opts.context_size = 8;
  opts.repetitions = 1;
  opts.seed = 3;
  const double value = averaged_point_value(p, 0.3, p.label_at(0.3), inst.test, spec, opts);
  // Rebuild repetition 0 by hand.
  RandomStream rng(3, 0);
  Dataset data(1);
  data.add({0.3}, p.label_at(0.3));
  for (int i = 1; i < 8; ++i) {
    const double c = rng.uniform();
    data.add({c}, p.label_at(c));
  }
  const Valuation v = extended_shapley(learner_pair(spec, data, inst.test));
  EXPECT_EQ(value, v.datum_values[0]);
}

TEST(PointValue, DuplicatedPointsGetEqualValues) {
  const IntervalProblem p = make_interval_problem(4, 2);
  const IntervalInstance inst = gen_intervals(4, 10, 2, IntervalOptions{40});
  Dataset data(1);
  data.add({0.3}, p.label_at(0.3));
  data.add({0.3}, p.label_at(0.3));
  RandomStream rng(5, 0);
  for (int i = 0; i < 8; ++i) {
    const double c = rng.uniform();
    data.add({c}, p.label_at(c));
  }
  for (std::size_t k : {1u, 3u}) {
    const Valuation v =
        extended_shapley(learner_pair({Knn{k}, MajorityVote{}, Metric{}}, data, inst.test));
    EXPECT_NEAR(v.datum_values[0], v.datum_values[1], 1e-12);
  }
}

TEST(PointValue, Errors) {
  const IntervalInstance inst = gen_intervals(2, 10, 1, IntervalOptions{20});
  PointValueOptions opts;
  opts.repetitions = 0;
  EXPECT_THROW(averaged_point_value(inst.problem, 0.1, 0, inst.test,
                                    {Knn{1}, MajorityVote{}, Metric{}}, opts),
               DomainError);
}

TEST(Shift, ColorCounts) {
  const ShiftScenario s = make_shift_scenario(0.2, 12);
  EXPECT_EQ(s.count(Color::kYellow), 5u);
  EXPECT_EQ(s.count(Color::kBlue), 5u);
  EXPECT_EQ(s.count(Color::kGreen), 2u);
  const ShiftScenario odd = make_shift_scenario(0.1, 11);  // n_g = 1, rest 10
  EXPECT_EQ(odd.count(Color::kGreen), 1u);
  const ShiftScenario odd2 = make_shift_scenario(0.2, 10);  // n_g = 2, rest 8
  EXPECT_EQ(odd2.count(Color::kYellow), 4u);
  const ShiftScenario odd3 = make_shift_scenario(0.3, 10);  // n_g = 3, rest 7
  EXPECT_EQ(odd3.count(Color::kYellow), 4u);
  EXPECT_EQ(odd3.count(Color::kBlue), 3u);
  EXPECT_DOUBLE_EQ(s.p_y() + s.p_b() + s.p_g, 1.0);
  EXPECT_THROW(make_shift_scenario(0.0, 12), DomainError);
  EXPECT_THROW(make_shift_scenario(0.51, 12), DomainError);
  EXPECT_THROW(make_shift_scenario(0.2, 0), DomainError);
}

TEST(Shift, TableRows) {
  const ShiftScenario s{0.2, 3, {Color::kYellow, Color::kBlue, Color::kGreen}};
  const GamePair pair = shift_game(s);
  const auto& a = *pair.algorithm_game();
  const auto& b = *pair.baseline_game();
  EXPECT_DOUBLE_EQ(a.eval({0, 1, 2}), 0.8);
  EXPECT_EQ(b.eval({0, 1, 2}), 1.0);
  EXPECT_EQ(a.eval({0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(a.eval({1, 2}), 0.6);
  EXPECT_DOUBLE_EQ(b.eval({1, 2}), 0.6);
  EXPECT_DOUBLE_EQ(a.eval({1}), 0.6);  // p_b + p_g
  EXPECT_DOUBLE_EQ(a.eval({0, 2}), 0.4);
  EXPECT_DOUBLE_EQ(a.eval({0}), 0.4);
  EXPECT_DOUBLE_EQ(a.eval({2}), 0.4);
  EXPECT_DOUBLE_EQ(a.eval({}), 0.4);
}

TEST(Shift, MarginalDiffIsMinusPg) {
  for (double pg : {0.05, 0.2, 0.35, 0.5}) {
    const GamePair pair = shift_game(make_shift_scenario(pg, 12));
    const Coalition all = Coalition::full(12);
    EXPECT_NEAR(pair.algorithm_game()->eval(all) - pair.baseline_game()->eval(all), -pg, 1e-15);
  }
}

// Pinned by brute-force enumeration of the 13-player lifted game.
TEST(Shift, PinnedValueAtPointTwo) {
  const ShiftRow row = shift_sweep(std::vector<double>{0.2}, 12).front();
  EXPECT_NEAR(row.algorithm_value, -0.11946386946387023, 1e-12);
  EXPECT_GT(row.algorithm_value, -0.2);
}

TEST(Shift, OracleAgreesOnSmallScenario) {
  const ShiftScenario s = make_shift_scenario(0.3, 7);
  const GamePair pair = shift_game(s);
  const auto o = oracle::extended(tabulate(*pair.algorithm_game()),
                                  tabulate(*pair.baseline_game()), 7);
  const Valuation v = extended_shapley(pair);
  EXPECT_NEAR(*v.algorithm_value, o.algorithm, 1e-12);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(v.datum_values[i], o.data[i], 1e-12);
}

TEST(Shift, SweepShape) {
  const std::vector<double> grid = parse_grid("0.05:0.45:0.05");
  ASSERT_EQ(grid.size(), 9u);
  const auto rows = shift_sweep(grid, 12);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].p_g, grid[k]);
    EXPECT_NEAR(rows[k].marginal_diff, -grid[k], 1e-12);
    EXPECT_GT(rows[k].algorithm_value, -grid[k]);
    if (k > 0) EXPECT_LT(rows[k].algorithm_value, rows[k - 1].algorithm_value);
  }
}

TEST(Shift, SameColorSameValue) {
  const ShiftScenario s = make_shift_scenario(0.25, 12);
  const Valuation v = extended_shapley(shift_game(s));
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j) {
      if (s.colors[i] == s.colors[j]) EXPECT_NEAR(v.datum_values[i], v.datum_values[j], 1e-12);
    }
  }
}

TEST(Shift, ParallelSweepMatchesSequential) {
  const std::vector<double> grid = parse_grid("0.1,0.2,0.3,0.4");
  const auto seq = shift_sweep(grid, 10);
  const auto par = shift_sweep(grid, 10, ExactOptions{}, 3);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(seq[k].algorithm_value, par[k].algorithm_value);
  }
}

TEST(Shift, GridErrors) {
  EXPECT_THROW(shift_sweep(std::vector<double>{0.0}, 12), DomainError);
  EXPECT_THROW(shift_sweep(std::vector<double>{0.6}, 12), DomainError);
  EXPECT_THROW(parse_grid("0.1:0.2"), DomainError);
  EXPECT_THROW(parse_grid("a,b"), DomainError);
  EXPECT_THROW(parse_grid("0.3:0.1:0.1"), DomainError);
  EXPECT_EQ(parse_grid("0.05:0.45:0.05")[2], 0.15);
}

}  // namespace
}  // namespace xshap

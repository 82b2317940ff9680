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

#include <algorithm>

#include "xshap/error.hpp"
#include "xshap/exact.hpp"
#include "xshap/montecarlo.hpp"
#include "xshap/random_games.hpp"

namespace xshap {
namespace {

EstimatorConfig fixed_budget(std::uint64_t seed, std::size_t permutations) {
  EstimatorConfig cfg;
  cfg.seed = seed;
  cfg.max_permutations = permutations;
  cfg.truncation_tolerance = 0.0;
  cfg.convergence_threshold = 0.0;
  return cfg;
}

GamePair derived_pair() {
  return GamePair(tabular(TabularGame(2, {0.0, 1.0, 1.0, 1.0})), zero_game(2));
}

TEST(Config, Validation) {
  EstimatorConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.max_permutations = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = EstimatorConfig{};
  cfg.truncation_tolerance = -0.1;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = EstimatorConfig{};
  cfg.convergence_window = 1;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.convergence_threshold = 0.0;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_THROW(tmc_data_shapley(*cardinality_game(2), EstimatorConfig{.max_permutations = 0}),
               DomainError);
}

TEST(Config, DefaultBudget) {
  EXPECT_EQ(default_max_permutations(1), 1000u);
  EXPECT_EQ(default_max_permutations(10), 1231u);  // 10 * 10 * ln 10 + 1000
  EXPECT_EQ(EstimatorConfig{}.budget(10), 1231u);
}

TEST(TmcData, NullPlayerIsExactlyZero) {
  const TabularGame g(3, {0.0, 1.0, 0.0, 1.0, 0.5, 2.0, 0.5, 2.0});  // player 1 is null
  const Valuation v = tmc_data_shapley(g, fixed_budget(3, 500));
  EXPECT_EQ(v.datum_values[1], 0.0);
}

TEST(TmcData, CardinalityIsExactlyOne) {
  EstimatorConfig cfg;
  cfg.truncation_tolerance = 0.0;
  const Valuation v = tmc_data_shapley(*cardinality_game(6), cfg);
  for (double x : v.datum_values) EXPECT_EQ(x, 1.0);
}

TEST(TmcData, NullPlayerPairSeedSeven) {
  const TabularGame g(2, {0.0, 1.0, 0.0, 1.0});
  const Valuation v = tmc_data_shapley(g, fixed_budget(7, 2000));
  EXPECT_LE(std::abs(v.datum_values[0] - 1.0), 0.05);
  EXPECT_LE(std::abs(v.datum_values[1]), 0.05);
  EXPECT_EQ(v.trace.permutations, 2000u);
  EXPECT_EQ(v.trace.stop, StopReason::kBudget);
  EXPECT_EQ(v.method, Method::kTmc);
}

TEST(TmcData, RunningEfficiency) {
  const TabularPair t = random_pair(6, 17);
  const Valuation v = tmc_data_shapley(t.algorithm, fixed_budget(1, 300));
  EXPECT_NEAR(v.datum_total(), t.algorithm.at(63) - t.algorithm.at(0), 1e-12);
  for (const auto& s : v.trace.checkpoints) {
    double total = 0.0;
    for (double x : s.values) total += x;
    EXPECT_NEAR(total, t.algorithm.at(63), 1e-12);
  }
}

TEST(TmcData, TruncationBiasOnMonotoneGames) {
  // Monotone game: v(S) = sqrt(sum of weights in S).
  const std::vector<double> w = {0.1, 0.4, 0.2, 0.9, 0.3, 0.6, 0.05, 0.7};
  const FunctionGame g(8, [&](const Coalition& s) {
    double sum = 0.0;
    for (std::size_t i : s.members()) sum += w[i];
    return std::sqrt(sum);
  });
  const Valuation exact = data_shapley(g);
  const double range = g.eval(Coalition::full(8));
  for (double eps : {0.01, 0.05, 0.1}) {
    EstimatorConfig cfg = fixed_budget(11, 20000);
    cfg.truncation_tolerance = eps;
    const Valuation v = tmc_data_shapley(g, cfg);
    EXPECT_GT(v.trace.truncated_fraction, 0.0);
    for (std::size_t i = 0; i < 8; ++i) {
      // Monte Carlo noise at this budget is well below 0.01.
      EXPECT_LE(std::abs(v.datum_values[i] - exact.datum_values[i]), eps * range + 0.01)
          << "eps " << eps << " datum " << i;
    }
  }
}

TEST(TmcExtended, EqualGamesGiveExactlyZero) {
  const GamePair pair = planted_pair(5, 3, Planted::kNullAlgorithm).as_pair();
  const Valuation v = tmc_extended_shapley(pair, fixed_budget(2, 300));
  EXPECT_EQ(*v.algorithm_value, 0.0);
}

TEST(TmcExtended, CardinalityZeroIsExact) {
  const Valuation v =
      tmc_extended_shapley(GamePair(cardinality_game(3), zero_game(3)), fixed_budget(4, 123));
  EXPECT_EQ(*v.algorithm_value, 1.5);
}

TEST(TmcExtended, DerivedPairSeedSeven) {
  const Valuation v = tmc_extended_shapley(derived_pair(), fixed_budget(7, 5000));
  EXPECT_LE(std::abs(*v.algorithm_value - 2.0 / 3.0), 0.02);
  EXPECT_LE(std::abs(v.datum_values[0] - 1.0 / 6.0), 0.02);
  EXPECT_LE(std::abs(v.datum_values[1] - 1.0 / 6.0), 0.02);
}

TEST(TmcExtended, PerPermutationEfficiency) {
  const TabularPair t = random_pair(5, 23, false);
  const Valuation v = tmc_extended_shapley(t.as_pair(), fixed_budget(5, 400));
  EXPECT_NEAR(v.total(), t.algorithm.at(31) - t.baseline.at(0), 1e-12);
}

TEST(TmcExtended, ConsistentOnRandomPairs) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const TabularPair t = random_pair(n, 800 + n);
    const GamePair pair = t.as_pair();
    const Valuation exact = extended_shapley(pair);
    const Valuation est = tmc_extended_shapley(pair, fixed_budget(7, 50000));
    double range = 0.0;
    for (double x : t.algorithm.values()) range = std::max(range, std::abs(x));
    for (double x : t.baseline.values()) range = std::max(range, std::abs(x));
    EXPECT_LE(std::abs(*est.algorithm_value - *exact.algorithm_value), 0.01 * range) << n;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(std::abs(est.datum_values[i] - exact.datum_values[i]), 0.01 * range) << n;
    }
  }
}

TEST(TmcExtended, BitIdenticalAcrossWorkerCounts) {
  const GamePair pair = random_pair(7, 99).as_pair();
  EstimatorConfig cfg;
  cfg.seed = 31;
  cfg.max_permutations = 3000;
  const Valuation base = tmc_extended_shapley(pair, cfg);
  for (std::size_t workers : {2u, 3u, 8u}) {
    cfg.workers = workers;
    const Valuation v = tmc_extended_shapley(pair, cfg);
    EXPECT_EQ(v.datum_values, base.datum_values);
    EXPECT_EQ(*v.algorithm_value, *base.algorithm_value);
    EXPECT_EQ(v.trace.permutations, base.trace.permutations);
    EXPECT_EQ(v.trace.stop, base.trace.stop);
  }
}

TEST(TmcExtended, DeterministicPerSeed) {
  const GamePair pair = random_pair(6, 5).as_pair();
  const EstimatorConfig cfg = fixed_budget(9, 700);
  EXPECT_EQ(tmc_extended_shapley(pair, cfg).datum_values,
            tmc_extended_shapley(pair, cfg).datum_values);
  EXPECT_NE(tmc_extended_shapley(pair, fixed_budget(10, 700)).datum_values,
            tmc_extended_shapley(pair, cfg).datum_values);
}

TEST(TmcExtended, PairMismatchAndOracleFailure) {
  const Game failing = std::make_shared<const FunctionGame>(3, [](const Coalition& s) -> double {
    if (s.size() == 2) throw std::runtime_error("cannot train");
    return 0.0;
  });
  try {
    tmc_extended_shapley(GamePair(failing, zero_game(3)), fixed_budget(1, 10));
    FAIL() << "expected OracleError";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.coalition().find(',') != std::string::npos, true);
  }
}

TEST(Convergence, ConstantTraceConvergesOnceWindowFills) {
  EstimatorConfig cfg;
  cfg.convergence_window = 5;
  ConvergenceTrace trace;
  for (std::size_t t = 1; t <= 6; ++t) {
    EXPECT_FALSE(has_converged(trace, cfg));
    trace.recent.push_back(Snapshot{t, {0.25, 0.75}});
  }
  EXPECT_TRUE(has_converged(trace, cfg));
}

TEST(Convergence, ShortTraceIsNotConverged) {
  EstimatorConfig cfg;
  cfg.convergence_window = 100;
  ConvergenceTrace trace;
  for (std::size_t t = 1; t <= 50; ++t) trace.recent.push_back(Snapshot{t, {1.0}});
  EXPECT_FALSE(has_converged(trace, cfg));
}

TEST(Convergence, MovingTraceIsNotConverged) {
  EstimatorConfig cfg;
  cfg.convergence_window = 4;
  ConvergenceTrace trace;
  for (std::size_t t = 1; t <= 5; ++t) {
    trace.recent.push_back(Snapshot{t, {0.0, static_cast<double>(t)}});
  }
  EXPECT_FALSE(has_converged(trace, cfg));
}

TEST(Convergence, DerivedPairConvergesBeforeBudget) {
  EstimatorConfig cfg;
  cfg.seed = 7;
  cfg.truncation_tolerance = 0.0;
  cfg.max_permutations = 50000;
  const Valuation v = tmc_extended_shapley(derived_pair(), cfg);
  EXPECT_EQ(v.trace.stop, StopReason::kConverged);
  EXPECT_LT(v.trace.permutations, 50000u);
  for (std::size_t k = 1; k < v.trace.checkpoints.size(); ++k) {
    EXPECT_LT(v.trace.checkpoints[k - 1].permutations, v.trace.checkpoints[k].permutations);
  }
  EXPECT_EQ(v.trace.checkpoints.back().permutations, v.trace.permutations);
}

}  // namespace
}  // namespace xshap

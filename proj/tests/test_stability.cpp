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
#include <memory>

#include "oracle.hpp"
#include "xshap/error.hpp"
#include "xshap/random_games.hpp"
#include "xshap/stability.hpp"

namespace xshap {
namespace {

TEST(Stability, Examples) {
  EXPECT_EQ(loo_stability(*cardinality_game(4), Exhaustive{}), 1.0);
  EXPECT_EQ(loo_stability(*zero_game(4), Exhaustive{}), 0.0);
  EXPECT_EQ(loo_stability(TabularGame(2, {0.0, 1.0, 1.0, 1.0}), Exhaustive{}), 1.0);
}

TEST(Stability, Bound) {
  EXPECT_EQ(stability_bound(1.0, 4), 2.0);
  EXPECT_EQ(stability_bound(0.0, 9), 0.0);
}

TEST(Stability, ExhaustiveMatchesOracle) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const TabularPair t = random_pair(n, 60 + n);
    EXPECT_EQ(loo_stability(t.algorithm, Exhaustive{}),
              oracle::gamma(tabulate(t.algorithm), n));
  }
}

TEST(Stability, SampledIsALowerBound) {
  const TabularPair t = random_pair(6, 3);
  const double exact = loo_stability(t.algorithm, Exhaustive{});
  const double sampled = loo_stability(t.algorithm, Sampled{200, 1});
  EXPECT_LE(sampled, exact);
  EXPECT_GT(sampled, 0.0);
  EXPECT_EQ(sampled, loo_stability(t.algorithm, Sampled{200, 1}));
}

TEST(Stability, ExhaustiveGuard) {
  EXPECT_THROW(loo_stability(*cardinality_game(25), Exhaustive{}), GuardError);
  EXPECT_NO_THROW(loo_stability(*cardinality_game(40), Sampled{100, 0}));
}

TEST(Stability, CardinalityZeroAttainsTheBound) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const StabilityReport r =
        stability_report(GamePair(cardinality_game(n), zero_game(n)), Exhaustive{});
    EXPECT_EQ(r.gamma_a, 1.0);
    EXPECT_EQ(r.gamma_b, 0.0);
    EXPECT_EQ(r.bound, static_cast<double>(n) / 2.0);
    ASSERT_TRUE(r.algorithm_value.has_value());
    EXPECT_NEAR(*r.algorithm_value, r.bound, 1e-9);
    EXPECT_TRUE(r.exhaustive);
  }
}

TEST(Stability, BoundHoldsOnNonNegativeRandomPairs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const StabilityReport r = stability_report(random_score_pair(n, seed).as_pair(), Exhaustive{});
    EXPECT_LE(*r.algorithm_value, r.bound + 1e-9);
  }
}

TEST(Stability, SumBoundHoldsOnSignedPairs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const StabilityReport r = stability_report(random_pair(n, seed).as_pair(), Exhaustive{});
    EXPECT_LE(std::abs(*r.algorithm_value), r.sum_bound + 1e-9);
  }
}

// A baseline with negative values escapes n * max(gamma) / 2.
TEST(Stability, MaxBoundNeedsNonNegativeBaseline) {
  const std::size_t n = 4;
  const GamePair pair(cardinality_game(n), std::make_shared<const FunctionGame>(n, [](const Coalition& s) {
                        return -static_cast<double>(s.size());
                      }));
  const StabilityReport r = stability_report(pair, Exhaustive{});
  EXPECT_EQ(r.bound, 2.0);
  EXPECT_NEAR(*r.algorithm_value, 4.0, 1e-12);
  EXPECT_NEAR(*r.algorithm_value, r.sum_bound, 1e-12);
}

}  // namespace
}  // namespace xshap

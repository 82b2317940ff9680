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

// Closed-form valuations by full subset enumeration.
//
// Every routine here tabulates the game(s) once (2^n evaluations) and then
// sums over subsets in ascending bitmask order, so results are deterministic.
// Enumeration is refused with GuardError above ExactOptions::guard.

#ifndef XSHAP_EXACT_HPP
#define XSHAP_EXACT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "xshap/game.hpp"
#include "xshap/valuation.hpp"

namespace xshap {

struct ExactOptions {
  // Largest n accepted; may be lowered, never raised past kExactGuard.
  std::size_t guard = kExactGuard;
};

// |S|! (n - |S| - 1)! / n!, the Shapley weight of a coalition of size s not
// containing the player. Requires 0 <= s < n.
double tau_weight(std::size_t s, std::size_t n);

// (a + 1) / (b + 1). Requires a <= b.
double w_weight(std::size_t a, std::size_t b);

// Evaluates every coalition; entry k is v(coalition with bitmask k).
std::vector<double> tabulate(const GameOracle& game, const ExactOptions& options = {});

// Data Shapley values of a tabulated n-player game.
std::vector<double> shapley_from_table(std::span<const double> table, std::size_t n);

// Sum of Data Shapley values equals v(N) - v(empty).
Valuation data_shapley(const GameOracle& game, const ExactOptions& options = {});

// Extended Shapley values from the closed-form weights: the algorithm value
// is the size-uniform average of v_A(S) - v_B(S), and each datum's value
// blends its marginals in v_A and v_B with weights (|S|+1)/(n+1) and
// 1 - (|S|+1)/(n+1).
Valuation extended_shapley(const GamePair& pair, const ExactOptions& options = {});

// The same values computed as plain Data Shapley of the lifted (n+1)-player
// game. Kept as an independent cross-check of extended_shapley().
Valuation extended_shapley_via_lift(const GamePair& pair, const ExactOptions& options = {});

// Naive symmetric scheme: both A and B join as extra players in an
// (n+2)-player game that is 0 without either algorithm and the better of the
// two when both are present. Sets algorithm_value (A) and baseline_value (B).
// Requires n + 2 <= guard.
Valuation symmetric_extended_shapley(const GamePair& pair, const ExactOptions& options = {});

// Algorithm value through the sum-of-marginals game
//   vbar(S) = sum_{i not in S} [v(S + i) - v(S)].
// vbar ignores constant shifts, so this equals extended_shapley() of the
// centered pair; the two agree on the raw pair when v_A(empty) = v_B(empty).
double algorithm_value_alternate(const GamePair& pair, const ExactOptions& options = {});

}  // namespace xshap

#endif  // XSHAP_EXACT_HPP

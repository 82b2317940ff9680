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

// Truncated Monte Carlo permutation estimators.
//
// Each sampled permutation pi walks the prefixes S_0 = {} c S_1 c ... c S_n.
//
// Data Shapley: the datum at position j is credited v(S_j) - v(S_{j-1}).
//
// Extended Shapley: the datum at position j is credited
//     w * [v_A(S_j) - v_A(S_{j-1})] + (1 - w) * [v_B(S_j) - v_B(S_{j-1})]
// with w = j / (n + 1), and the algorithm is credited
//     (1 / (n + 1)) * sum_{j=0..n} [v_A(S_j) - v_B(S_j)].
// Both are unbiased for the exact values: a prefix of size k is a uniformly
// random k-subset, and averaging over the n + 1 prefix sizes reproduces the
// size-uniform weighting of the algorithm value.
//
// Truncation: once |v(N) - v(S_{j-1})| drops below
// truncation_tolerance * |v(N) - v(empty)|, the game stops being evaluated
// for the rest of the permutation and its value is frozen, so later
// marginals are zero. Each game of a pair truncates independently, and the
// frozen values also feed the algorithm's prefix sum.
//
// Permutation t draws its order from the counter-based stream (seed, t) and
// partial results are merged in t order, so estimates are bit-identical for
// any worker count.

#ifndef XSHAP_MONTECARLO_HPP
#define XSHAP_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include "xshap/game.hpp"
#include "xshap/valuation.hpp"

namespace xshap {

struct EstimatorConfig {
  std::uint64_t seed = 0;
  // Unset: default_max_permutations(n).
  std::optional<std::size_t> max_permutations;
  // Relative to |v(N) - v(empty)|; 0 disables truncation.
  double truncation_tolerance = 0.01;
  std::size_t convergence_window = 100;
  // 0 disables the convergence stop; the estimator then runs the full budget.
  double convergence_threshold = 0.005;
  // 0 selects std::thread::hardware_concurrency().
  std::size_t workers = 1;
  // Spacing of the coarse checkpoints kept in the trace.
  std::size_t checkpoint_stride = 100;

  bool convergence_enabled() const { return convergence_threshold > 0.0; }
  // Throws DomainError on a zero budget, negative tolerances, or a window
  // below 2 with convergence enabled.
  void validate() const;
  std::size_t budget(std::size_t players) const;
};

// ceil(10 n ln n) + 1000.
std::size_t default_max_permutations(std::size_t players);

Valuation tmc_data_shapley(const GameOracle& game, const EstimatorConfig& config);
Valuation tmc_extended_shapley(const GamePair& pair, const EstimatorConfig& config);

// True when, over the trailing convergence_window permutations recorded in
// trace.recent, the mean absolute per-permutation change of every tracked
// value is below convergence_threshold times the spread (max - min) of the
// latest values, the spread floored at machine-epsilon scale. A trace with
// fewer than window + 1 snapshots is not converged.
bool has_converged(const ConvergenceTrace& trace, const EstimatorConfig& config);

}  // namespace xshap

#endif  // XSHAP_MONTECARLO_HPP

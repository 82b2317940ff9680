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

// Scenario generators and protocols: the interval labeling problem, per-size
// performance curves, per-point value averaging, and the colored
// distribution-shift game.

#ifndef XSHAP_EXPERIMENTS_HPP
#define XSHAP_EXPERIMENTS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "xshap/dataset.hpp"
#include "xshap/exact.hpp"
#include "xshap/game.hpp"
#include "xshap/learners.hpp"
#include "xshap/montecarlo.hpp"
#include "xshap/rng.hpp"
#include "xshap/valuation.hpp"

namespace xshap {

// --- interval labeling ------------------------------------------------------

// [0, 1] split into equal-width cells with alternating labels.
struct IntervalProblem {
  std::size_t num_intervals = 2;
  std::vector<double> boundaries;  // num_intervals + 1 values from 0 to 1
  int starting_label = 0;
  std::uint64_t seed = 0;

  int label_at(double x) const;
  // Distance from x to the nearest interior boundary (infinity with one cell).
  double boundary_distance(double x) const;
};

struct IntervalOptions {
  std::size_t test_size = 200;
  // Interior boundaries move by up to jitter * cell width, in pairs that
  // keep each label's total measure at 1/2. 0 gives equal widths.
  double jitter = 0.0;
};

struct IntervalInstance {
  IntervalProblem problem;
  Dataset train{1};
  Dataset test{1};
};

// Throws DomainError on an odd or zero num_intervals, n = 0, an odd test
// size, or jitter outside [0, 0.5).
IntervalProblem make_interval_problem(std::size_t num_intervals, std::uint64_t seed,
                                      double jitter = 0.0);

// `count` uniform points labeled by the problem.
Dataset sample_interval_points(const IntervalProblem& problem, std::size_t count,
                               RandomStream& rng);

// Equal label counts; each label's points are stratified over its cells.
Dataset balanced_interval_test(const IntervalProblem& problem, std::size_t count,
                               RandomStream& rng);

IntervalInstance gen_intervals(std::size_t num_intervals, std::size_t n, std::uint64_t seed,
                               const IntervalOptions& options = {});

// --- performance curves -----------------------------------------------------

struct CurvePoint {
  std::size_t size = 0;
  double mean = 0.0;
  std::size_t samples = 0;
};

struct CurveRow {
  std::size_t size = 0;
  double mean_v_a = 0.0;
  double mean_v_b = 0.0;
  std::size_t samples = 0;
};

// Mean of v over subsets of each size k = 0..n: every subset when
// C(n, k) <= samples_per_size, otherwise samples_per_size distinct subsets
// drawn uniformly. Throws DomainError on samples_per_size = 0.
std::vector<CurvePoint> performance_curve(const GameOracle& game, std::size_t samples_per_size,
                                          std::uint64_t seed);

// Both games evaluated on the same subsets.
std::vector<CurveRow> performance_curves(const GamePair& pair, std::size_t samples_per_size,
                                         std::uint64_t seed);

// (1 / (n + 1)) * sum_k (mean_v_a - mean_v_b): the algorithm value when every
// size was enumerated, an estimate of it otherwise.
double curve_area(std::span<const CurveRow> rows);

// --- valuation helpers ------------------------------------------------------

struct LearnerPairSpec {
  LearnerSpec algorithm;
  LearnerSpec baseline;
  Metric metric;
};

// Centered pair of memoized learner games on (train, test).
GamePair learner_pair(const LearnerPairSpec& spec, const Dataset& train, const Dataset& test);

// Extended Shapley of a centered learner pair: exact when n fits under the
// guard, TMC otherwise.
Valuation value_dataset(const LearnerPairSpec& spec, const Dataset& train, const Dataset& test,
                        const EstimatorConfig& engine, const ExactOptions& exact = {});

struct PointValueOptions {
  std::size_t context_size = 200;
  std::size_t repetitions = 100;
  std::uint64_t seed = 0;
  EstimatorConfig engine;
  ExactOptions exact;
};

// Mean over repetitions of the target's Extended Shapley value in a dataset
// made of the target (index 0) and context_size - 1 fresh points from the
// problem. Repetition r draws its context from stream (seed, r) and runs TMC
// with seed derive_seed(engine.seed, r). Throws DomainError on repetitions
// = 0 or context_size = 0.
double averaged_point_value(const IntervalProblem& problem, double x, int label,
                            const Dataset& test, const LearnerPairSpec& learners,
                            const PointValueOptions& options);

// --- distribution shift -----------------------------------------------------

enum class Color { kYellow, kBlue, kGreen };

const char* to_string(Color c);

struct ShiftScenario {
  double p_g = 0.2;
  std::size_t n = 12;
  std::vector<Color> colors;  // yellow first, then blue, then green

  double p_y() const { return (1.0 - p_g) / 2.0; }
  double p_b() const { return (1.0 - p_g) / 2.0; }
  std::size_t count(Color c) const;
};

// n_g = round(p_g * n); the rest split evenly, yellow taking the odd point.
// Throws DomainError unless 0 < p_g <= 0.5 and n >= 1.
ShiftScenario make_shift_scenario(double p_g, std::size_t n);

// Values depend only on the colors present in S:
//   {y,b,g}: v_A = 1 - p_g, v_B = 1    {y,b}: 1
//   {b,g}: p_b + p_y / 2               {b}: p_b + p_g
//   {y,g}, {y}, {g}, {}: p_y
GamePair shift_game(const ShiftScenario& scenario);

struct ShiftRow {
  double p_g = 0.0;
  double marginal_diff = 0.0;  // v_A(N) - v_B(N)
  double algorithm_value = 0.0;
  // Exact datum value of one point of each color (NaN if the color is absent),
  // indexed by Color.
  std::array<double, 3> color_values{};
};

// Exact Extended Shapley per grid point. Throws DomainError on a grid value
// outside (0, 0.5]. Rows follow the grid order; grid points are spread over
// `workers` threads (0 = hardware concurrency).
std::vector<ShiftRow> shift_sweep(std::span<const double> grid, std::size_t n,
                                  const ExactOptions& exact = {}, std::size_t workers = 1);

// "lo:hi:step" inclusive, or a comma list. Throws DomainError.
std::vector<double> parse_grid(std::string_view text);

}  // namespace xshap

#endif  // XSHAP_EXPERIMENTS_HPP

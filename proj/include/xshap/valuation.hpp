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

#ifndef XSHAP_VALUATION_HPP
#define XSHAP_VALUATION_HPP

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace xshap {

enum class Method { kExact, kLifted, kSymmetric, kTmc };

std::string to_string(Method m);

enum class StopReason { kNone, kConverged, kBudget };

std::string to_string(StopReason r);

// Running means after a given number of permutations. The last entry of
// `values` is the algorithm value when one is being estimated.
struct Snapshot {
  std::size_t permutations = 0;
  std::vector<double> values;
};

struct ConvergenceTrace {
  // Coarse history for reporting, one entry every `stride` permutations plus
  // the final state. Permutation counts are strictly increasing.
  std::vector<Snapshot> checkpoints;
  // Per-permutation snapshots of the trailing window, oldest first; this is
  // what has_converged() inspects.
  std::deque<Snapshot> recent;
  std::size_t permutations = 0;
  double truncated_fraction = 0.0;
  StopReason stop = StopReason::kNone;
};

struct Valuation {
  std::vector<double> datum_values;
  // Absent for plain Data Shapley.
  std::optional<double> algorithm_value;
  // Only set by the symmetric scheme, which also values the baseline.
  std::optional<double> baseline_value;
  Method method = Method::kExact;
  ConvergenceTrace trace;  // empty for exact methods

  double datum_total() const;
  // algorithm_value (if any) plus the datum values.
  double total() const;
};

}  // namespace xshap

#endif  // XSHAP_VALUATION_HPP

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

// Leave-one-out stability and the resulting bound on the algorithm value.

#ifndef XSHAP_STABILITY_HPP
#define XSHAP_STABILITY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>

#include "xshap/exact.hpp"
#include "xshap/game.hpp"

namespace xshap {

struct Exhaustive {};

// Max over `samples` uniformly drawn (S, i) pairs: a lower bound on gamma.
struct Sampled {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
};

using StabilityMode = std::variant<Exhaustive, Sampled>;

// max |v(S + i) - v(S)| over coalitions S and players i not in S.
double loo_stability(const GameOracle& game, const StabilityMode& mode,
                     const ExactOptions& options = {});

// n * gamma / 2.
double stability_bound(double gamma, std::size_t n);

struct StabilityReport {
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  // n * max(gamma_a, gamma_b) / 2.
  double bound = 0.0;
  // n * (gamma_a + gamma_b) / 2. Holds for any pair; `bound` additionally
  // relies on the baseline's size-weighted mean being non-negative.
  double sum_bound = 0.0;
  // Exact algorithm value, when n is within the exact guard.
  std::optional<double> algorithm_value;
  // False in sampled mode: gammas are lower bounds and the bounds are not
  // certified.
  bool exhaustive = true;
};

StabilityReport stability_report(const GamePair& pair, const StabilityMode& mode,
                                 const ExactOptions& options = {});

}  // namespace xshap

#endif  // XSHAP_STABILITY_HPP

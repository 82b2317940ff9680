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

#include "xshap/stability.hpp"

#include <algorithm>
#include <cmath>

#include "xshap/error.hpp"
#include "xshap/rng.hpp"

namespace xshap {

namespace {

double exhaustive_gamma(const GameOracle& game, const ExactOptions& options) {
  const std::size_t n = game.players();
  const std::vector<double> table = tabulate(game, options);
  double gamma = 0.0;
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      gamma = std::max(gamma, std::abs(table[mask | bit] - table[mask]));
    }
  }
  return gamma;
}

double sampled_gamma(const GameOracle& game, const Sampled& mode) {
  const std::size_t n = game.players();
  if (n == 0) return 0.0;
  RandomStream rng(mode.seed, 0);
  double gamma = 0.0;
  for (std::size_t k = 0; k < mode.samples; ++k) {
    Coalition s(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.below(2) == 1) s.insert(j);
    }
    const std::size_t i = rng.below(static_cast<std::uint32_t>(n));
    s.erase(i);
    gamma = std::max(gamma, std::abs(game.eval(s.with(i)) - game.eval(s)));
  }
  return gamma;
}

}  // namespace

double loo_stability(const GameOracle& game, const StabilityMode& mode,
                     const ExactOptions& options) {
  if (std::holds_alternative<Exhaustive>(mode)) return exhaustive_gamma(game, options);
  return sampled_gamma(game, std::get<Sampled>(mode));
}

double stability_bound(double gamma, std::size_t n) {
  return static_cast<double>(n) * gamma / 2.0;
}

StabilityReport stability_report(const GamePair& pair, const StabilityMode& mode,
                                 const ExactOptions& options) {
  const std::size_t n = pair.players();
  StabilityReport report;
  report.exhaustive = std::holds_alternative<Exhaustive>(mode);
  report.gamma_a = loo_stability(*pair.algorithm_game(), mode, options);
  report.gamma_b = loo_stability(*pair.baseline_game(), mode, options);
  report.bound = stability_bound(std::max(report.gamma_a, report.gamma_b), n);
  report.sum_bound = stability_bound(report.gamma_a + report.gamma_b, n);
  if (n <= std::min(options.guard, kExactGuard)) {
    report.algorithm_value = extended_shapley(pair, options).algorithm_value;
  }
  return report;
}

}  // namespace xshap

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

#include "xshap/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "xshap/error.hpp"

namespace xshap {

namespace {

std::size_t effective_guard(const ExactOptions& options) {
  return std::min(options.guard, kExactGuard);
}

void check_guard(std::size_t players, std::size_t limit, const char* what) {
  if (players > limit) {
    throw GuardError(std::string(what) + ": n=" + std::to_string(players) +
                     " exceeds the exact-enumeration guard of " + std::to_string(limit) +
                     "; use the Monte Carlo estimators instead");
  }
}

// Tabulates without the caller-facing guard; callers check it first.
std::vector<double> tabulate_unchecked(const GameOracle& game) {
  const std::size_t n = game.players();
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = game.eval(Coalition::from_mask(mask, n));
  }
  return table;
}

// Binomial coefficient by the multiplicative recurrence; exact in double as
// long as the result stays below 2^53.
double binomial(std::size_t n, std::size_t k) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    c = c * static_cast<double>(n - j) / static_cast<double>(j + 1);
  }
  return c;
}

std::vector<double> tau_table(std::size_t n) {
  std::vector<double> tau(n);
  for (std::size_t s = 0; s < n; ++s) tau[s] = tau_weight(s, n);
  return tau;
}

}  // namespace

double tau_weight(std::size_t s, std::size_t n) {
  if (n == 0 || s >= n) {
    throw DomainError("tau_weight needs 0 <= s < n (got s=" + std::to_string(s) +
                      ", n=" + std::to_string(n) + ")");
  }
  // s!(n-s-1)!/n! = 1 / (n * C(n-1, s))
  return 1.0 / (static_cast<double>(n) * binomial(n - 1, s));
}

double w_weight(std::size_t a, std::size_t b) {
  if (a > b) {
    throw DomainError("w_weight needs a <= b (got a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ")");
  }
  return static_cast<double>(a + 1) / static_cast<double>(b + 1);
}

std::vector<double> tabulate(const GameOracle& game, const ExactOptions& options) {
  check_guard(game.players(), effective_guard(options), "tabulate");
  return tabulate_unchecked(game);
}

std::vector<double> shapley_from_table(std::span<const double> table, std::size_t n) {
  if (table.size() != (std::size_t{1} << n)) {
    throw DomainError("table size does not match n=" + std::to_string(n));
  }
  std::vector<double> phi(n, 0.0);
  if (n == 0) return phi;
  const std::vector<double> tau = tau_table(n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k == n) continue;
    const double weight = tau[k];
    const double base = table[mask];
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      phi[i] += weight * (table[mask | bit] - base);
    }
  }
  return phi;
}

Valuation data_shapley(const GameOracle& game, const ExactOptions& options) {
  const std::size_t n = game.players();
  check_guard(n, effective_guard(options), "data_shapley");
  const std::vector<double> table = tabulate_unchecked(game);
  Valuation out;
  out.datum_values = shapley_from_table(table, n);
  out.method = Method::kExact;
  return out;
}

Valuation extended_shapley(const GamePair& pair, const ExactOptions& options) {
  const std::size_t n = pair.players();
  check_guard(n, effective_guard(options), "extended_shapley");
  const std::vector<double> a = tabulate_unchecked(*pair.algorithm_game());
  const std::vector<double> b = tabulate_unchecked(*pair.baseline_game());

  // Weight of a size-k coalition in the algorithm value: k!(n-k)!/(n+1)!.
  std::vector<double> algo_weight(n + 1);
  for (std::size_t k = 0; k <= n; ++k) algo_weight[k] = tau_weight(k, n + 1);

  // Datum weights: w_{k,n} tau_{k,n} on v_A marginals, (1 - w_{k,n}) tau_{k,n}
  // on v_B marginals.
  std::vector<double> weight_a(n), weight_b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = tau_weight(k, n);
    const double w = w_weight(k, n);
    weight_a[k] = w * tau;
    weight_b[k] = (1.0 - w) * tau;
  }

  Valuation out;
  out.method = Method::kExact;
  out.datum_values.assign(n, 0.0);
  double algorithm = 0.0;
  for (std::uint64_t mask = 0; mask < a.size(); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    algorithm += algo_weight[k] * (a[mask] - b[mask]);
    if (k == n) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      out.datum_values[i] += weight_a[k] * (a[mask | bit] - a[mask]) +
                             weight_b[k] * (b[mask | bit] - b[mask]);
    }
  }
  out.algorithm_value = algorithm;
  return out;
}

Valuation extended_shapley_via_lift(const GamePair& pair, const ExactOptions& options) {
  const std::size_t n = pair.players();
  check_guard(n + 1, effective_guard(options), "extended_shapley_via_lift (n + 1 players)");
  const auto lifted = lift(pair);
  const std::vector<double> table = tabulate_unchecked(*lifted);
  std::vector<double> phi = shapley_from_table(table, n + 1);
  Valuation out;
  out.method = Method::kLifted;
  out.algorithm_value = phi[n];
  phi.pop_back();
  out.datum_values = std::move(phi);
  return out;
}

Valuation symmetric_extended_shapley(const GamePair& pair, const ExactOptions& options) {
  const std::size_t n = pair.players();
  check_guard(n + 2, effective_guard(options), "symmetric_extended_shapley (n + 2 players)");
  const std::vector<double> a = tabulate_unchecked(*pair.algorithm_game());
  const std::vector<double> b = tabulate_unchecked(*pair.baseline_game());

  const std::uint64_t data_mask = (std::uint64_t{1} << n) - 1;
  const std::uint64_t a_bit = std::uint64_t{1} << n;
  const std::uint64_t b_bit = std::uint64_t{1} << (n + 1);
  std::vector<double> table(std::size_t{1} << (n + 2));
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    const std::uint64_t data = mask & data_mask;
    const bool has_a = mask & a_bit;
    const bool has_b = mask & b_bit;
    if (has_a && has_b) {
      table[mask] = std::max(a[data], b[data]);
    } else if (has_a) {
      table[mask] = a[data];
    } else if (has_b) {
      table[mask] = b[data];
    } else {
      table[mask] = 0.0;
    }
  }
  std::vector<double> phi = shapley_from_table(table, n + 2);
  Valuation out;
  out.method = Method::kSymmetric;
  out.baseline_value = phi[n + 1];
  out.algorithm_value = phi[n];
  phi.resize(n);
  out.datum_values = std::move(phi);
  return out;
}

double algorithm_value_alternate(const GamePair& pair, const ExactOptions& options) {
  const std::size_t n = pair.players();
  check_guard(n, effective_guard(options), "algorithm_value_alternate");
  const std::vector<double> a = tabulate_unchecked(*pair.algorithm_game());
  const std::vector<double> b = tabulate_unchecked(*pair.baseline_game());

  std::vector<double> weight(n + 1);
  for (std::size_t k = 0; k <= n; ++k) weight[k] = tau_weight(k, n + 1);

  double value = 0.0;
  for (std::uint64_t mask = 0; mask < a.size(); ++mask) {
    double marginal_a = 0.0;
    double marginal_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (mask & bit) continue;
      marginal_a += a[mask | bit] - a[mask];
      marginal_b += b[mask | bit] - b[mask];
    }
    value += weight[static_cast<std::size_t>(std::popcount(mask))] * (marginal_a - marginal_b);
  }
  return value;
}

}  // namespace xshap

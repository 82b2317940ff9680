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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xshap::oracle {

std::vector<double> permutation_shapley(std::size_t players, const MaskFn& v) {
  std::vector<std::size_t> order(players);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<long double> sum(players, 0.0L);
  std::size_t orders = 0;
  do {
    std::uint64_t mask = 0;
    double prev = v(0);
    for (std::size_t p : order) {
      mask |= std::uint64_t{1} << p;
      const double cur = v(mask);
      sum[p] += static_cast<long double>(cur) - prev;
      prev = cur;
    }
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  std::vector<double> out(players);
  for (std::size_t p = 0; p < players; ++p) {
    out[p] = static_cast<double>(sum[p] / static_cast<long double>(orders));
  }
  return out;
}

ExtendedValues extended(const std::vector<double>& a, const std::vector<double>& b,
                        std::size_t n) {
  const std::uint64_t algo = std::uint64_t{1} << n;
  const std::uint64_t data = algo - 1;
  const auto phi = permutation_shapley(n + 1, [&](std::uint64_t mask) {
    return (mask & algo) ? a[mask & data] : b[mask & data];
  });
  return {std::vector<double>(phi.begin(), phi.begin() + static_cast<long>(n)), phi[n]};
}

SymmetricValues symmetric(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t n) {
  const std::uint64_t pa = std::uint64_t{1} << n;
  const std::uint64_t pb = std::uint64_t{1} << (n + 1);
  const std::uint64_t data = pa - 1;
  const auto phi = permutation_shapley(n + 2, [&](std::uint64_t mask) {
    const bool has_a = mask & pa;
    const bool has_b = mask & pb;
    const std::uint64_t s = mask & data;
    if (has_a && has_b) return std::max(a[s], b[s]);
    if (has_a) return a[s];
    if (has_b) return b[s];
    return 0.0;
  });
  return {std::vector<double>(phi.begin(), phi.begin() + static_cast<long>(n)), phi[n],
          phi[n + 1]};
}

double gamma(const std::vector<double>& table, std::size_t n) {
  double best = 0.0;
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (!(s & bit)) best = std::max(best, std::abs(table[s | bit] - table[s]));
    }
  }
  return best;
}

}  // namespace xshap::oracle

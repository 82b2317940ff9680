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

#include "xshap/axioms.hpp"

#include <algorithm>
#include <cmath>

#include "xshap/error.hpp"

namespace xshap {

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::kNullDatum: return "null-datum";
    case Axiom::kNullAlgorithm: return "null-algorithm";
    case Axiom::kEfficiency: return "efficiency";
    case Axiom::kDataSymmetry: return "data-symmetry";
    case Axiom::kEquitability: return "equitability";
  }
  return "unknown";
}

std::size_t AxiomReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const AxiomCheck& c) { return !c.passed; }));
}

bool AxiomReport::checked(Axiom a) const {
  return std::any_of(checks.begin(), checks.end(),
                     [a](const AxiomCheck& c) { return c.axiom == a; });
}

namespace {

using Table = std::vector<double>;

bool is_null(const Table& t, std::size_t i) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  for (std::uint64_t mask = 0; mask < t.size(); ++mask) {
    if (!(mask & bit) && t[mask | bit] != t[mask]) return false;
  }
  return true;
}

// v(S + i) == v(S + j) for all S excluding both.
bool interchangeable(const Table& t, std::size_t i, std::size_t j) {
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  for (std::uint64_t mask = 0; mask < t.size(); ++mask) {
    if ((mask & bi) || (mask & bj)) continue;
    if (t[mask | bi] != t[mask | bj]) return false;
  }
  return true;
}

// v_B(S + i) == v_A(S) for all S excluding i.
bool mimics_algorithm(const Table& a, const Table& b, std::size_t i) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  for (std::uint64_t mask = 0; mask < a.size(); ++mask) {
    if (!(mask & bit) && b[mask | bit] != a[mask]) return false;
  }
  return true;
}

AxiomCheck make_check(Axiom axiom, std::string subject, double discrepancy, double tolerance) {
  return AxiomCheck{axiom, std::move(subject), discrepancy,
                    std::abs(discrepancy) <= tolerance};
}

}  // namespace

AxiomReport check_axioms(const GamePair& pair, const Valuation& valuation, double tolerance,
                         const ExactOptions& options) {
  const std::size_t n = pair.players();
  if (valuation.datum_values.size() != n) {
    throw DomainError("valuation has " + std::to_string(valuation.datum_values.size()) +
                      " datum values for a pair with n=" + std::to_string(n));
  }
  const Table a = tabulate(*pair.algorithm_game(), options);
  const Table b = tabulate(*pair.baseline_game(), options);
  const auto& phi = valuation.datum_values;
  const double algorithm = valuation.algorithm_value.value_or(0.0);

  AxiomReport report;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_null(a, i) && is_null(b, i)) {
      report.checks.push_back(
          make_check(Axiom::kNullDatum, "datum " + std::to_string(i), phi[i], tolerance));
    }
  }
  if (a == b) {
    report.checks.push_back(make_check(Axiom::kNullAlgorithm, "algorithm", algorithm, tolerance));
  }

  const double expected_total = a.back() - b.front();
  report.checks.push_back(make_check(Axiom::kEfficiency, "all players",
                                     valuation.total() - expected_total, tolerance));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (interchangeable(a, i, j) && interchangeable(b, i, j)) {
        report.checks.push_back(make_check(Axiom::kDataSymmetry,
                                           "data " + std::to_string(i) + "," + std::to_string(j),
                                           phi[i] - phi[j], tolerance));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mimics_algorithm(a, b, i)) {
      report.checks.push_back(make_check(Axiom::kEquitability, "datum " + std::to_string(i),
                                         phi[i] - algorithm, tolerance));
    }
  }
  return report;
}

}  // namespace xshap

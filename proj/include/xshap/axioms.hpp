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

#ifndef XSHAP_AXIOMS_HPP
#define XSHAP_AXIOMS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "xshap/exact.hpp"
#include "xshap/game.hpp"
#include "xshap/valuation.hpp"

namespace xshap {

enum class Axiom {
  kNullDatum,      // datum null in both games gets 0
  kNullAlgorithm,  // v_A == v_B gives the algorithm 0
  kEfficiency,     // algorithm + data = v_A(N) - v_B(empty)
  kDataSymmetry,   // data interchangeable in both games get equal values
  kEquitability,   // datum i with v_B(S + i) = v_A(S) gets the algorithm's value
};

std::string to_string(Axiom a);

struct AxiomCheck {
  Axiom axiom;
  std::string subject;  // e.g. "datum 3", "data 1,4", "algorithm"
  double discrepancy = 0.0;
  bool passed = true;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
  bool checked(Axiom a) const;
};

// Scans the tabulated pair for every axiom premise (exact equality) and
// checks the matching conclusion on `valuation` within `tolerance`.
// Efficiency is always checked. Linearity is a property across pairs and is
// not covered here.
AxiomReport check_axioms(const GamePair& pair, const Valuation& valuation, double tolerance,
                         const ExactOptions& options = {});

}  // namespace xshap

#endif  // XSHAP_AXIOMS_HPP

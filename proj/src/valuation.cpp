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

#include "xshap/valuation.hpp"

#include <numeric>

namespace xshap {

std::string to_string(Method m) {
  switch (m) {
    case Method::kExact: return "exact";
    case Method::kLifted: return "lifted";
    case Method::kSymmetric: return "symmetric";
    case Method::kTmc: return "tmc";
  }
  return "unknown";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kNone: return "none";
    case StopReason::kConverged: return "converged";
    case StopReason::kBudget: return "budget";
  }
  return "unknown";
}

double Valuation::datum_total() const {
  return std::accumulate(datum_values.begin(), datum_values.end(), 0.0);
}

double Valuation::total() const {
  return datum_total() + algorithm_value.value_or(0.0);
}

}  // namespace xshap

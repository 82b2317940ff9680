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

#include "xshap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

#include "xshap/error.hpp"
#include "xshap/exact.hpp"
#include "xshap/rng.hpp"

namespace xshap {

void EstimatorConfig::validate() const {
  if (max_permutations && *max_permutations == 0) {
    throw DomainError("permutation budget must be at least 1");
  }
  if (!(truncation_tolerance >= 0.0)) throw DomainError("truncation tolerance must be >= 0");
  if (!(convergence_threshold >= 0.0)) throw DomainError("convergence threshold must be >= 0");
  if (convergence_enabled() && convergence_window < 2) {
    throw DomainError("convergence window must be at least 2");
  }
  if (checkpoint_stride == 0) throw DomainError("checkpoint stride must be at least 1");
}

std::size_t EstimatorConfig::budget(std::size_t players) const {
  return max_permutations.value_or(default_max_permutations(players));
}

std::size_t default_max_permutations(std::size_t players) {
  if (players < 2) return 1000;
  const double n = static_cast<double>(players);
  return static_cast<std::size_t>(std::ceil(10.0 * n * std::log(n))) + 1000;
}

bool has_converged(const ConvergenceTrace& trace, const EstimatorConfig& config) {
  if (!config.convergence_enabled()) return false;
  const std::size_t window = config.convergence_window;
  if (window == 0 || trace.recent.size() < window + 1) return false;

  const std::vector<double>& latest = trace.recent.back().values;
  if (latest.empty()) return true;
  const auto [lo, hi] = std::minmax_element(latest.begin(), latest.end());
  double magnitude = 1.0;
  for (double v : latest) magnitude = std::max(magnitude, std::abs(v));
  const double spread =
      std::max(*hi - *lo, std::numeric_limits<double>::epsilon() * magnitude);
  const double limit = config.convergence_threshold * spread;

  const std::size_t first = trace.recent.size() - window;
  for (std::size_t v = 0; v < latest.size(); ++v) {
    double change = 0.0;
    for (std::size_t k = first; k < trace.recent.size(); ++k) {
      change += std::abs(trace.recent[k].values[v] - trace.recent[k - 1].values[v]);
    }
    if (!(change / static_cast<double>(window) < limit)) return false;
  }
  return true;
}

namespace {

struct PermutationResult {
  std::vector<double> credit;  // one entry per tracked value
  std::size_t steps = 0;       // prefix steps across all games
  std::size_t truncated = 0;   // of which skipped by truncation
  std::exception_ptr error;
};

std::vector<std::size_t> sample_permutation(std::uint64_t seed, std::uint64_t index,
                                            std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RandomStream rng(seed, index);
  rng.shuffle(std::span<std::size_t>(order));
  return order;
}

// State carried while one game is walked along a permutation.
class TruncatedWalk {
 public:
  TruncatedWalk(const GameOracle& game, double full, double empty, double tolerance)
      : game_(game), full_(full), value_(empty), tolerance_(tolerance) {}

  // Returns the value of the prefix after adding `player`.
  double step(std::size_t player, PermutationResult& stats) {
    ++stats.steps;
    if (!truncated_ && std::abs(full_ - value_) < tolerance_) truncated_ = true;
    if (truncated_) {
      ++stats.truncated;
      return value_;
    }
    if (!walk_) walk_ = game_.walk();
    value_ = walk_->add(player);
    return value_;
  }

 private:
  const GameOracle& game_;
  double full_;
  double value_;
  double tolerance_;
  bool truncated_ = false;
  std::unique_ptr<PrefixWalk> walk_;
};

struct Reference {
  double full;
  double empty;
  double tolerance;
};

Reference reference_values(const GameOracle& game, double relative_tolerance) {
  const std::size_t n = game.players();
  const double full = game.eval(Coalition::full(n));
  const double empty = game.eval(Coalition(n));
  return {full, empty, relative_tolerance * std::abs(full - empty)};
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs `kernel(permutation_index, result)` for permutations 0, 1, ... until
// the budget is spent or the running means converge, merging results in
// index order.
template <typename Kernel>
Valuation run_estimator(std::size_t tracked, const EstimatorConfig& config, std::size_t budget,
                        Kernel kernel) {
  const std::size_t workers = resolve_workers(config.workers);
  const std::size_t batch = std::max<std::size_t>(1, workers * 16);

  std::vector<double> sums(tracked, 0.0);
  std::size_t steps = 0;
  std::size_t truncated = 0;
  ConvergenceTrace trace;
  const std::size_t keep = config.convergence_window + 1;

  auto snapshot = [&](std::size_t t) {
    Snapshot s;
    s.permutations = t;
    s.values.resize(tracked);
    for (std::size_t v = 0; v < tracked; ++v) s.values[v] = sums[v] / static_cast<double>(t);
    return s;
  };

  std::size_t t = 0;
  bool converged = false;
  std::vector<PermutationResult> results;
  while (t < budget && !converged) {
    const std::size_t count = std::min(batch, budget - t);
    results.assign(count, PermutationResult{});
    const std::size_t threads = std::min(workers, count);
    if (threads <= 1) {
      for (std::size_t k = 0; k < count; ++k) {
        try {
          kernel(t + k, results[k]);
        } catch (...) {
          results[k].error = std::current_exception();
          break;
        }
      }
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t k = w; k < count; k += threads) {
            try {
              kernel(t + k, results[k]);
            } catch (...) {
              results[k].error = std::current_exception();
              return;
            }
          }
        });
      }
      for (auto& th : pool) th.join();
    }

    for (auto& r : results) {
      if (r.error) std::rethrow_exception(r.error);
      ++t;
      for (std::size_t v = 0; v < tracked; ++v) sums[v] += r.credit[v];
      steps += r.steps;
      truncated += r.truncated;

      trace.recent.push_back(snapshot(t));
      if (trace.recent.size() > keep) trace.recent.pop_front();
      if (t % config.checkpoint_stride == 0) trace.checkpoints.push_back(trace.recent.back());
      if (has_converged(trace, config)) {
        converged = true;
        break;
      }
    }
  }

  if (trace.checkpoints.empty() || trace.checkpoints.back().permutations != t) {
    trace.checkpoints.push_back(snapshot(t));
  }
  trace.permutations = t;
  trace.truncated_fraction =
      steps == 0 ? 0.0 : static_cast<double>(truncated) / static_cast<double>(steps);
  trace.stop = converged ? StopReason::kConverged : StopReason::kBudget;

  Valuation out;
  out.method = Method::kTmc;
  out.datum_values.resize(tracked);
  for (std::size_t v = 0; v < tracked; ++v) {
    out.datum_values[v] = sums[v] / static_cast<double>(t);
  }
  out.trace = std::move(trace);
  return out;
}

}  // namespace

Valuation tmc_data_shapley(const GameOracle& game, const EstimatorConfig& config) {
  config.validate();
  const std::size_t n = game.players();
  const Reference ref = reference_values(game, config.truncation_tolerance);

  auto kernel = [&](std::size_t index, PermutationResult& result) {
    const auto order = sample_permutation(config.seed, index, n);
    result.credit.assign(n, 0.0);
    TruncatedWalk walk(game, ref.full, ref.empty, ref.tolerance);
    double previous = ref.empty;
    for (std::size_t player : order) {
      const double current = walk.step(player, result);
      result.credit[player] = current - previous;
      previous = current;
    }
  };
  return run_estimator(n, config, config.budget(n), kernel);
}

Valuation tmc_extended_shapley(const GamePair& pair, const EstimatorConfig& config) {
  config.validate();
  const std::size_t n = pair.players();
  const GameOracle& game_a = *pair.algorithm_game();
  const GameOracle& game_b = *pair.baseline_game();
  const Reference ref_a = reference_values(game_a, config.truncation_tolerance);
  const Reference ref_b = reference_values(game_b, config.truncation_tolerance);

  std::vector<double> weight(n + 1, 0.0);  // weight[j] = w_{j-1,n} = j/(n+1)
  for (std::size_t j = 1; j <= n; ++j) weight[j] = w_weight(j - 1, n);

  auto kernel = [&](std::size_t index, PermutationResult& result) {
    const auto order = sample_permutation(config.seed, index, n);
    result.credit.assign(n + 1, 0.0);
    TruncatedWalk walk_a(game_a, ref_a.full, ref_a.empty, ref_a.tolerance);
    TruncatedWalk walk_b(game_b, ref_b.full, ref_b.empty, ref_b.tolerance);
    double prev_a = ref_a.empty;
    double prev_b = ref_b.empty;
    double gap_sum = prev_a - prev_b;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t player = order[j - 1];
      const double cur_a = walk_a.step(player, result);
      const double cur_b = walk_b.step(player, result);
      result.credit[player] =
          weight[j] * (cur_a - prev_a) + (1.0 - weight[j]) * (cur_b - prev_b);
      gap_sum += cur_a - cur_b;
      prev_a = cur_a;
      prev_b = cur_b;
    }
    result.credit[n] = gap_sum / static_cast<double>(n + 1);
  };
  Valuation out = run_estimator(n + 1, config, config.budget(n), kernel);
  out.algorithm_value = out.datum_values.back();
  out.datum_values.pop_back();
  return out;
}

}  // namespace xshap

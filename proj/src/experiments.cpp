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

#include "xshap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_set>

#include "xshap/error.hpp"
#include "xshap/performance_game.hpp"

namespace xshap {

namespace {

// Stream ids inside one interval instance.
constexpr std::uint64_t kProblemStream = 0;
constexpr std::uint64_t kTrainStream = 1;
constexpr std::uint64_t kTestStream = 2;

std::size_t cell_of(const IntervalProblem& p, double x) {
  const auto it = std::upper_bound(p.boundaries.begin(), p.boundaries.end(), x);
  const auto c = static_cast<std::ptrdiff_t>(it - p.boundaries.begin()) - 1;
  return static_cast<std::size_t>(
      std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(p.num_intervals) - 1));
}

int cell_label(const IntervalProblem& p, std::size_t cell) {
  return cell % 2 == 0 ? p.starting_label : 1 - p.starting_label;
}

// C(n, k), saturating at `cap` + 1.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c * static_cast<long double>(n - k + j) / static_cast<long double>(j);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

// The subsets of size k a curve averages over, in a fixed order.
std::vector<Coalition> curve_subsets(std::size_t n, std::size_t k, std::size_t samples,
                                     std::uint64_t seed) {
  std::vector<Coalition> out;
  const std::size_t total = binomial_capped(n, k, samples);
  if (total <= samples) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    out.reserve(total);
    while (true) {
      out.push_back(Coalition::of(std::span<const std::size_t>(idx), n));
      std::size_t j = k;
      while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
  }
  RandomStream rng(seed, k);
  std::unordered_set<Coalition, CoalitionHash> seen;
  std::vector<std::size_t> pool(n);
  out.reserve(samples);
  while (out.size() < samples) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t r = j + rng.below(static_cast<std::uint32_t>(n - j));
      std::swap(pool[j], pool[r]);
    }
    Coalition s = Coalition::of(std::span<const std::size_t>(pool.data(), k), n);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

// --- interval labeling ------------------------------------------------------

int IntervalProblem::label_at(double x) const { return cell_label(*this, cell_of(*this, x)); }

double IntervalProblem::boundary_distance(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t b = 1; b + 1 < boundaries.size(); ++b) {
    best = std::min(best, std::abs(x - boundaries[b]));
  }
  return best;
}

IntervalProblem make_interval_problem(std::size_t num_intervals, std::uint64_t seed,
                                      double jitter) {
  if (num_intervals == 0 || num_intervals % 2 != 0) {
    throw DomainError("num_intervals must be a positive even count, got " +
                      std::to_string(num_intervals));
  }
  if (!(jitter >= 0.0 && jitter < 0.5)) throw DomainError("jitter must lie in [0, 0.5)");
  IntervalProblem p;
  p.num_intervals = num_intervals;
  p.seed = seed;
  RandomStream rng(seed, kProblemStream);
  p.starting_label = static_cast<int>(rng.below(2));
  const double width = 1.0 / static_cast<double>(num_intervals);
  p.boundaries.resize(num_intervals + 1);
  for (std::size_t b = 0; b <= num_intervals; ++b) {
    p.boundaries[b] = static_cast<double>(b) * width;
  }
  p.boundaries.back() = 1.0;
  if (jitter > 0.0) {
    // Zero-mean shifts of the middle boundary of each cell pair.
    const std::size_t pairs = num_intervals / 2;
    std::vector<double> shift(pairs);
    for (double& s : shift) s = (2.0 * rng.uniform() - 1.0) * jitter * width;
    const double mean = std::accumulate(shift.begin(), shift.end(), 0.0) /
                        static_cast<double>(pairs);
    for (std::size_t c = 0; c < pairs; ++c) p.boundaries[2 * c + 1] += shift[c] - mean;
  }
  return p;
}

Dataset sample_interval_points(const IntervalProblem& problem, std::size_t count,
                               RandomStream& rng) {
  Dataset out(1);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = rng.uniform();
    out.add({x}, problem.label_at(x));
  }
  return out;
}

Dataset balanced_interval_test(const IntervalProblem& problem, std::size_t count,
                               RandomStream& rng) {
  if (count % 2 != 0) throw DomainError("test size must be even to balance two labels");
  Dataset out(1);
  const std::size_t per_label = count / 2;
  for (int label = 0; label < 2; ++label) {
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < problem.num_intervals; ++c) {
      if (cell_label(problem, c) == label) cells.push_back(c);
    }
    double measure = 0.0;
    for (std::size_t c : cells) measure += problem.boundaries[c + 1] - problem.boundaries[c];
    for (std::size_t j = 0; j < per_label; ++j) {
      // Stratum j of the label's region, mapped back onto its cells.
      double u = (static_cast<double>(j) + rng.uniform()) / static_cast<double>(per_label) *
                 measure;
      double x = problem.boundaries[cells.back() + 1];
      for (std::size_t c : cells) {
        const double w = problem.boundaries[c + 1] - problem.boundaries[c];
        if (u < w) {
          x = problem.boundaries[c] + u;
          break;
        }
        u -= w;
      }
      if (problem.label_at(x) != label) x = std::nextafter(x, 0.0);
      out.add({x}, label);
    }
  }
  return out;
}

IntervalInstance gen_intervals(std::size_t num_intervals, std::size_t n, std::uint64_t seed,
                               const IntervalOptions& options) {
  if (n == 0) throw DomainError("training size must be at least 1");
  IntervalInstance inst;
  inst.problem = make_interval_problem(num_intervals, seed, options.jitter);
  RandomStream train_rng(seed, kTrainStream);
  inst.train = sample_interval_points(inst.problem, n, train_rng);
  RandomStream test_rng(seed, kTestStream);
  inst.test = balanced_interval_test(inst.problem, options.test_size, test_rng);
  return inst;
}

// --- performance curves -----------------------------------------------------

std::vector<CurvePoint> performance_curve(const GameOracle& game, std::size_t samples_per_size,
                                          std::uint64_t seed) {
  if (samples_per_size == 0) throw DomainError("samples_per_size must be positive");
  const std::size_t n = game.players();
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto subsets = curve_subsets(n, k, samples_per_size, seed);
    double sum = 0.0;
    for (const auto& s : subsets) sum += game.eval(s);
    out.push_back({k, sum / static_cast<double>(subsets.size()), subsets.size()});
  }
  return out;
}

std::vector<CurveRow> performance_curves(const GamePair& pair, std::size_t samples_per_size,
                                         std::uint64_t seed) {
  if (samples_per_size == 0) throw DomainError("samples_per_size must be positive");
  const std::size_t n = pair.players();
  std::vector<CurveRow> out;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto subsets = curve_subsets(n, k, samples_per_size, seed);
    double a = 0.0;
    double b = 0.0;
    for (const auto& s : subsets) {
      a += pair.algorithm_game()->eval(s);
      b += pair.baseline_game()->eval(s);
    }
    const auto m = static_cast<double>(subsets.size());
    out.push_back({k, a / m, b / m, subsets.size()});
  }
  return out;
}

double curve_area(std::span<const CurveRow> rows) {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : rows) sum += r.mean_v_a - r.mean_v_b;
  return sum / static_cast<double>(rows.size());
}

// --- valuation helpers ------------------------------------------------------

GamePair learner_pair(const LearnerPairSpec& spec, const Dataset& train, const Dataset& test) {
  return center(GamePair(performance_game(spec.algorithm, train, test, spec.metric),
                         performance_game(spec.baseline, train, test, spec.metric)));
}

Valuation value_dataset(const LearnerPairSpec& spec, const Dataset& train, const Dataset& test,
                        const EstimatorConfig& engine, const ExactOptions& exact) {
  const GamePair pair = learner_pair(spec, train, test);
  if (train.size() <= exact.guard) return extended_shapley(pair, exact);
  return tmc_extended_shapley(pair, engine);
}

double averaged_point_value(const IntervalProblem& problem, double x, int label,
                            const Dataset& test, const LearnerPairSpec& learners,
                            const PointValueOptions& options) {
  if (options.repetitions == 0) throw DomainError("repetitions must be positive");
  if (options.context_size == 0) throw DomainError("context_size must be positive");
  double sum = 0.0;
  for (std::size_t r = 0; r < options.repetitions; ++r) {
    RandomStream rng(options.seed, r);
    Dataset data(1);
    data.add({x}, label);
    for (std::size_t i = 1; i < options.context_size; ++i) {
      const double c = rng.uniform();
      data.add({c}, problem.label_at(c));
    }
    EstimatorConfig engine = options.engine;
    engine.seed = derive_seed(options.engine.seed, r);
    sum += value_dataset(learners, data, test, engine, options.exact).datum_values[0];
  }
  return sum / static_cast<double>(options.repetitions);
}

// --- distribution shift -----------------------------------------------------

const char* to_string(Color c) {
  switch (c) {
    case Color::kYellow:
      return "yellow";
    case Color::kBlue:
      return "blue";
    case Color::kGreen:
      return "green";
  }
  return "?";
}

std::size_t ShiftScenario::count(Color c) const {
  return static_cast<std::size_t>(std::count(colors.begin(), colors.end(), c));
}

ShiftScenario make_shift_scenario(double p_g, std::size_t n) {
  if (!(p_g > 0.0 && p_g <= 0.5)) {
    throw DomainError("p_g must lie in (0, 0.5], got " + std::to_string(p_g));
  }
  if (n == 0) throw DomainError("shift scenario needs at least one point");
  ShiftScenario s;
  s.p_g = p_g;
  s.n = n;
  const auto n_g = static_cast<std::size_t>(std::lround(p_g * static_cast<double>(n)));
  const std::size_t rest = n - n_g;
  const std::size_t n_b = rest / 2;
  const std::size_t n_y = rest - n_b;
  s.colors.insert(s.colors.end(), n_y, Color::kYellow);
  s.colors.insert(s.colors.end(), n_b, Color::kBlue);
  s.colors.insert(s.colors.end(), n_g, Color::kGreen);
  return s;
}

GamePair shift_game(const ShiftScenario& scenario) {
  if (scenario.colors.size() != scenario.n) {
    throw DomainError("shift scenario has " + std::to_string(scenario.colors.size()) +
                      " colors for " + std::to_string(scenario.n) + " points");
  }
  const double p_g = scenario.p_g;
  const double p_y = scenario.p_y();
  const double p_b = scenario.p_b();
  auto colors = std::make_shared<const std::vector<Color>>(scenario.colors);
  auto make = [=](bool algorithm) {
    return std::make_shared<const FunctionGame>(
        colors->size(), [=](const Coalition& s) {
          bool y = false;
          bool b = false;
          bool g = false;
          for (std::size_t i : s.members()) {
            switch ((*colors)[i]) {
              case Color::kYellow:
                y = true;
                break;
              case Color::kBlue:
                b = true;
                break;
              case Color::kGreen:
                g = true;
                break;
            }
          }
          if (y && b && g) return algorithm ? 1.0 - p_g : 1.0;
          if (y && b) return 1.0;
          if (b && g) return p_b + p_y / 2.0;
          if (b) return p_b + p_g;
          return p_y;
        });
  };
  return GamePair(make(true), make(false));
}

std::vector<ShiftRow> shift_sweep(std::span<const double> grid, std::size_t n,
                                  const ExactOptions& exact, std::size_t workers) {
  for (double p : grid) {
    if (!(p > 0.0 && p <= 0.5)) {
      throw DomainError("grid value " + std::to_string(p) + " lies outside (0, 0.5]");
    }
  }
  std::vector<ShiftRow> rows(grid.size());
  auto solve = [&](std::size_t idx) {
    const ShiftScenario scenario = make_shift_scenario(grid[idx], n);
    const GamePair pair = shift_game(scenario);
    const Valuation v = extended_shapley(pair, exact);
    const Coalition all = Coalition::full(n);
    ShiftRow& row = rows[idx];
    row.p_g = scenario.p_g;
    row.marginal_diff = pair.algorithm_game()->eval(all) - pair.baseline_game()->eval(all);
    row.algorithm_value = *v.algorithm_value;
    row.color_values.fill(std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = n; i-- > 0;) {
      row.color_values[static_cast<std::size_t>(scenario.colors[i])] = v.datum_values[i];
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(grid.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) solve(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) {
        try {
          solve(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](std::string_view part) {
    const std::string s(part);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw DomainError("bad grid value \"" + s + "\"");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw DomainError("grid range must be lo:hi:step");
    const double lo = number(text.substr(0, c1));
    const double hi = number(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = number(text.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) throw DomainError("grid range needs lo <= hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t j = 0; j < count; ++j) {
      const double v = lo + static_cast<double>(j) * step;
      out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(number(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace xshap

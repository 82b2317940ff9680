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

#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "xshap/axioms.hpp"
#include "xshap/dataset.hpp"
#include "xshap/error.hpp"
#include "xshap/exact.hpp"
#include "xshap/experiments.hpp"
#include "xshap/game_io.hpp"
#include "xshap/learners.hpp"
#include "xshap/montecarlo.hpp"
#include "xshap/performance_game.hpp"
#include "xshap/random_games.hpp"
#include "xshap/stability.hpp"

#ifndef XSHAP_VERSION
#define XSHAP_VERSION "dev"
#endif

namespace xshap::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kHoldoutStream = 0x686f6c64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int k = 0; k < len; ++k) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  }
  return hex.str();
}

// Everything needed to rerun a command: argv, resolved parameters, seed,
// versions and input digests.
class Manifest {
 public:
  Manifest(std::string command, const std::vector<std::string>& argv)
      : command_(std::move(command)), argv_(argv), started_(utc_now()) {}

  json& parameters() { return parameters_; }
  void set_seed(std::uint64_t seed, std::string source) {
    seed_ = seed;
    seed_source_ = std::move(source);
  }
  // Reads the file, records its digest, and returns its contents.
  std::string input(const std::string& path) {
    std::string bytes = read_file(path);
    inputs_[path] = "sha256:" + sha256_hex(bytes);
    return bytes;
  }

  json to_json() const {
    json j;
    j["command"] = command_;
    j["argv"] = argv_;
    j["parameters"] = parameters_.is_null() ? json::object() : parameters_;
    if (seed_) {
      j["seed"] = *seed_;
      j["seed_source"] = seed_source_;
    }
    j["engine"] = {{"xshap", XSHAP_VERSION},
                   {"compiler", __VERSION__},
                   {"rng", "philox4x32-10"}};
    j["inputs"] = inputs_.is_null() ? json::object() : inputs_;
    j["started_at"] = started_;
    j["finished_at"] = utc_now();
    return j;
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::string started_;
  json parameters_;
  json inputs_;
  std::optional<std::uint64_t> seed_;
  std::string seed_source_;
};

struct SeedFlag {
  std::uint64_t value = 0;
  CLI::Option* option = nullptr;

  // Flag, then XSHAP_SEED, then 0.
  std::pair<std::uint64_t, std::string> resolve() const {
    if (option != nullptr && option->count() > 0) return {value, "flag"};
    if (const char* env = std::getenv("XSHAP_SEED"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      errno = 0;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (errno != 0 || *end != '\0' || *env == '-') {
        throw UsageError(std::string("XSHAP_SEED is not an unsigned integer: ") + env);
      }
      return {static_cast<std::uint64_t>(v), "env"};
    }
    return {0, "default"};
  }
};

void add_seed(CLI::App* sub, SeedFlag& seed) {
  seed.option = sub->add_option("--seed", seed.value, "RNG seed (falls back to $XSHAP_SEED)");
}

struct EngineFlags {
  EstimatorConfig config;
  std::size_t permutations = 0;  // 0: default budget
};

void add_engine(CLI::App* sub, EngineFlags& e) {
  sub->add_option("--permutations", e.permutations, "Permutation budget (default 10 n ln n + 1000)");
  sub->add_option("--truncation", e.config.truncation_tolerance,
                  "Relative truncation tolerance (0 disables)")
      ->capture_default_str();
  sub->add_option("--window", e.config.convergence_window, "Convergence window")
      ->capture_default_str();
  sub->add_option("--threshold", e.config.convergence_threshold,
                  "Convergence threshold (0 runs the full budget)")
      ->capture_default_str();
  sub->add_option("--workers", e.config.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  sub->add_option("--stride", e.config.checkpoint_stride, "Checkpoint spacing")
      ->capture_default_str();
}

EstimatorConfig engine_config(const EngineFlags& e, std::uint64_t seed) {
  EstimatorConfig cfg = e.config;
  cfg.seed = seed;
  if (e.permutations > 0) cfg.max_permutations = e.permutations;
  return cfg;
}

json engine_json(const EstimatorConfig& cfg, std::size_t n) {
  return {{"seed", cfg.seed},
          {"max_permutations", cfg.budget(n)},
          {"truncation_tolerance", cfg.truncation_tolerance},
          {"convergence_window", cfg.convergence_window},
          {"convergence_threshold", cfg.convergence_threshold},
          {"workers", cfg.workers},
          {"checkpoint_stride", cfg.checkpoint_stride}};
}

LearnerSpec learner_flag(const std::string& text) {
  try {
    return parse_learner(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

Metric metric_flag(const std::string& text) {
  try {
    return parse_metric(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot write " + path);
  file << text;
  if (!file) throw FormatError("failed writing " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string csv_header_comment(const Manifest& m) {
  return "# manifest: " + m.to_json().dump() + "\n";
}

struct RawValues {
  double v_a_full = 0.0;
  double v_a_empty = 0.0;
  double v_b_full = 0.0;
  double v_b_empty = 0.0;
};

RawValues raw_values(const GamePair& pair) {
  const std::size_t n = pair.players();
  const Coalition empty(n);
  const Coalition all = Coalition::full(n);
  return {pair.algorithm_game()->eval(all), pair.algorithm_game()->eval(empty),
          pair.baseline_game()->eval(all), pair.baseline_game()->eval(empty)};
}

json trace_json(const ConvergenceTrace& trace, bool has_algorithm) {
  json checkpoints = json::array();
  for (const auto& s : trace.checkpoints) {
    json c{{"permutations", s.permutations}};
    if (has_algorithm && !s.values.empty()) c["algorithm_value"] = s.values.back();
    checkpoints.push_back(std::move(c));
  }
  return {{"permutations", trace.permutations},
          {"truncated_fraction", trace.truncated_fraction},
          {"stop_reason", to_string(trace.stop)},
          {"checkpoints", std::move(checkpoints)}};
}

// Valuation JSON. `valued` is the pair the values refer to (possibly
// centered); `raw` holds the uncentered endpoint scores.
json valuation_json(const Valuation& v, std::size_t n, const RawValues& raw, double target,
                    json diagnostics, const Manifest& manifest) {
  json j;
  j["n"] = n;
  j["method"] = to_string(v.method);
  j["algorithm_value"] = v.algorithm_value ? json(*v.algorithm_value) : json(nullptr);
  if (v.baseline_value) j["baseline_value"] = *v.baseline_value;
  j["datum_values"] = v.datum_values;
  j["raw"] = {{"v_a_full", raw.v_a_full},
              {"v_a_empty", raw.v_a_empty},
              {"v_b_full", raw.v_b_full},
              {"v_b_empty", raw.v_b_empty}};
  diagnostics["efficiency_total"] = v.total();
  diagnostics["efficiency_target"] = target;
  diagnostics["efficiency_gap"] = v.total() - target;
  if (v.method == Method::kTmc) diagnostics["trace"] = trace_json(v.trace, v.algorithm_value.has_value());
  j["diagnostics"] = std::move(diagnostics);
  j["manifest"] = manifest.to_json();
  return j;
}

GamePair as_pair(const LoadedGame& game) {
  if (const auto* pair = std::get_if<TabularPair>(&game)) return pair->as_pair();
  const auto& single = std::get<TabularGame>(game);
  return GamePair(tabular(single), zero_game(single.players()));
}

// --- subcommands ------------------------------------------------------------

struct GameOpts {
  std::string game;
  std::string out;
  std::string method = "extended";
  std::size_t guard = kExactGuard;
  bool center = false;
};

int cmd_exact(const GameOpts& o, Manifest& m, std::ostream& out) {
  const LoadedGame loaded = load_tabular_game(m.input(o.game));
  ExactOptions exact{o.guard};
  m.parameters() = {{"game", o.game}, {"method", o.method}, {"guard", o.guard},
                    {"center", o.center}};
  json diagnostics = json::object();
  if (const auto* single = std::get_if<TabularGame>(&loaded)) {
    Game g = tabular(*single);
    if (o.center) g = center(g);
    const Valuation v = data_shapley(*g, exact);
    const std::size_t n = single->players();
    const RawValues raw{single->at((std::uint64_t{1} << n) - 1), single->at(0), 0.0, 0.0};
    const double target = g->eval(Coalition::full(n)) - g->eval(Coalition(n));
    diagnostics["game"] = "single";
    emit(dump(valuation_json(v, n, raw, target, diagnostics, m)), o.out, out);
    return kOk;
  }
  const GamePair raw_pair = std::get<TabularPair>(loaded).as_pair();
  const GamePair pair = o.center ? center(raw_pair) : raw_pair;
  Valuation v;
  if (o.method == "extended") {
    v = extended_shapley(pair, exact);
  } else if (o.method == "lift") {
    v = extended_shapley_via_lift(pair, exact);
  } else {
    v = symmetric_extended_shapley(pair, exact);
  }
  const std::size_t n = pair.players();
  double target = pair.algorithm_game()->eval(Coalition::full(n)) -
                  pair.baseline_game()->eval(Coalition(n));
  if (o.method == "symmetric") {
    target = std::max(pair.algorithm_game()->eval(Coalition::full(n)),
                      pair.baseline_game()->eval(Coalition::full(n)));
  }
  diagnostics["game"] = "pair";
  emit(dump(valuation_json(v, n, raw_values(raw_pair), target, diagnostics, m)), o.out, out);
  return kOk;
}

int cmd_tmc(const GameOpts& o, const EngineFlags& e, const SeedFlag& s, Manifest& m,
            std::ostream& out) {
  const auto [seed, source] = s.resolve();
  m.set_seed(seed, source);
  const LoadedGame loaded = load_tabular_game(m.input(o.game));
  json diagnostics = json::object();
  Valuation v;
  std::size_t n = 0;
  RawValues raw;
  double target = 0.0;
  if (const auto* single = std::get_if<TabularGame>(&loaded)) {
    n = single->players();
    Game g = tabular(*single);
    if (o.center) g = center(g);
    const EstimatorConfig cfg = engine_config(e, seed);
    m.parameters() = {{"game", o.game}, {"center", o.center}, {"engine", engine_json(cfg, n)}};
    v = tmc_data_shapley(*g, cfg);
    raw = {single->at((std::uint64_t{1} << n) - 1), single->at(0), 0.0, 0.0};
    target = g->eval(Coalition::full(n)) - g->eval(Coalition(n));
    diagnostics["game"] = "single";
  } else {
    const GamePair raw_pair = std::get<TabularPair>(loaded).as_pair();
    const GamePair pair = o.center ? center(raw_pair) : raw_pair;
    n = pair.players();
    const EstimatorConfig cfg = engine_config(e, seed);
    m.parameters() = {{"game", o.game}, {"center", o.center}, {"engine", engine_json(cfg, n)}};
    v = tmc_extended_shapley(pair, cfg);
    raw = raw_values(raw_pair);
    target = pair.algorithm_game()->eval(Coalition::full(n)) -
             pair.baseline_game()->eval(Coalition(n));
    diagnostics["game"] = "pair";
  }
  emit(dump(valuation_json(v, n, raw, target, diagnostics, m)), o.out, out);
  return kOk;
}

struct LearnerFlags {
  std::string learner = "knn:k=1";
  std::string baseline = "majority";
  std::string metric = "accuracy";
  std::string method = "auto";
};

void add_learners(CLI::App* sub, LearnerFlags& l) {
  sub->add_option("--learner", l.learner, "Algorithm A, e.g. knn:k=3, logreg, majority")
      ->capture_default_str();
  sub->add_option("--baseline", l.baseline, "Baseline B")->capture_default_str();
  sub->add_option("--metric", l.metric, "accuracy | equity")->capture_default_str();
  sub->add_option("--method", l.method, "auto | exact | tmc")
      ->check(CLI::IsMember({"auto", "exact", "tmc"}))
      ->capture_default_str();
}

struct LearnerRun {
  Valuation valuation;
  RawValues raw;
  double target = 0.0;
};

LearnerRun value_learners(const LearnerFlags& l, const Dataset& train, const Dataset& test,
                          const EstimatorConfig& cfg, json& params) {
  LearnerPairSpec spec{learner_flag(l.learner), learner_flag(l.baseline), metric_flag(l.metric)};
  if (train.empty()) throw DomainError("training set is empty");
  const GamePair raw_pair(performance_game(spec.algorithm, train, test, spec.metric),
                          performance_game(spec.baseline, train, test, spec.metric));
  const GamePair pair = center(raw_pair);
  const std::size_t n = train.size();
  const bool exact = l.method == "exact" || (l.method == "auto" && n <= kExactGuard);
  params["learner"] = to_string(spec.algorithm);
  params["baseline"] = to_string(spec.baseline);
  params["metric"] = to_string(spec.metric);
  params["method"] = exact ? "exact" : "tmc";
  LearnerRun run;
  if (exact) {
    run.valuation = extended_shapley(pair);
  } else {
    params["engine"] = engine_json(cfg, n);
    run.valuation = tmc_extended_shapley(pair, cfg);
  }
  run.raw = raw_values(raw_pair);
  run.target = run.raw.v_a_full - run.raw.v_a_empty;
  return run;
}

struct ValuateOpts {
  std::string data;
  std::string test;
  double holdout = 0.25;
  std::string label_column = "label";
  std::string subgroup_column;
  std::string out;
};

int cmd_valuate(const ValuateOpts& o, const LearnerFlags& l, const EngineFlags& e,
                const SeedFlag& s, Manifest& m, std::ostream& out) {
  const auto [seed, source] = s.resolve();
  m.set_seed(seed, source);
  const CsvOptions csv{o.label_column, o.subgroup_column};
  const Dataset all = parse_csv(m.input(o.data), csv);
  json params{{"data", o.data}, {"label_column", o.label_column},
              {"subgroup_column", o.subgroup_column}};
  Dataset train(all.dims());
  Dataset test(all.dims());
  if (!o.test.empty()) {
    train = all;
    test = parse_csv(m.input(o.test), csv);
    params["test"] = o.test;
  } else {
    if (!(o.holdout > 0.0 && o.holdout < 1.0)) throw UsageError("--holdout must lie in (0, 1)");
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream rng(seed, kHoldoutStream);
    rng.shuffle(std::span<std::size_t>(order));
    const auto test_n = static_cast<std::size_t>(
        std::llround(o.holdout * static_cast<double>(all.size())));
    if (test_n == 0 || test_n >= all.size()) {
      throw DomainError("holdout split leaves an empty train or test set");
    }
    std::vector<std::size_t> test_idx(order.begin(), order.begin() + static_cast<long>(test_n));
    std::vector<std::size_t> train_idx(order.begin() + static_cast<long>(test_n), order.end());
    std::sort(test_idx.begin(), test_idx.end());
    std::sort(train_idx.begin(), train_idx.end());
    train = all.subset(train_idx);
    test = all.subset(test_idx);
    params["holdout"] = o.holdout;
    params["train_rows"] = train_idx;
  }
  const EstimatorConfig cfg = engine_config(e, seed);
  const LearnerRun run = value_learners(l, train, test, cfg, params);
  m.parameters() = params;
  json diagnostics{{"train_size", train.size()}, {"test_size", test.size()}};
  emit(dump(valuation_json(run.valuation, train.size(), run.raw, run.target, diagnostics, m)),
       o.out, out);
  return kOk;
}

struct IntervalOpts {
  std::size_t intervals = 8;
  std::size_t n = 300;
  std::size_t test_size = 200;
  double jitter = 0.0;
  std::string out;
  std::string train_out;
  std::string curve_out;
  std::size_t curve_samples = 100;
  std::string points_out;
  std::size_t points = 0;
  std::size_t context = 200;
  std::size_t repetitions = 100;
};

int cmd_intervals(const IntervalOpts& o, const LearnerFlags& l, const EngineFlags& e,
                  const SeedFlag& s, Manifest& m, std::ostream& out) {
  const auto [seed, source] = s.resolve();
  m.set_seed(seed, source);
  const IntervalInstance inst =
      gen_intervals(o.intervals, o.n, seed, IntervalOptions{o.test_size, o.jitter});
  json params{{"intervals", o.intervals}, {"n", o.n}, {"test_size", o.test_size},
              {"jitter", o.jitter}};
  const EstimatorConfig cfg = engine_config(e, seed);
  const LearnerRun run = value_learners(l, inst.train, inst.test, cfg, params);
  m.parameters() = params;

  if (!o.train_out.empty()) emit(to_csv(inst.train, CsvOptions{}), o.train_out, out);
  if (!o.curve_out.empty()) {
    const LearnerPairSpec spec{learner_flag(l.learner), learner_flag(l.baseline),
                               metric_flag(l.metric)};
    const auto rows = performance_curves(learner_pair(spec, inst.train, inst.test),
                                         o.curve_samples, seed);
    std::string csv = csv_header_comment(m) + "size,mean_v_a,mean_v_b,samples\n";
    for (const auto& r : rows) {
      csv += std::to_string(r.size) + "," + csv_number(r.mean_v_a) + "," +
             csv_number(r.mean_v_b) + "," + std::to_string(r.samples) + "\n";
    }
    emit(csv, o.curve_out, out);
  }
  if (o.points > 0) {
    const LearnerPairSpec spec{learner_flag(l.learner), learner_flag(l.baseline),
                               metric_flag(l.metric)};
    PointValueOptions pv;
    pv.context_size = o.context;
    pv.repetitions = o.repetitions;
    pv.seed = derive_seed(seed, 1);
    pv.engine = cfg;
    std::string csv = csv_header_comment(m) + "x,label,boundary_distance,value\n";
    for (std::size_t k = 0; k < o.points; ++k) {
      const double x = (static_cast<double>(k) + 0.5) / static_cast<double>(o.points);
      const int label = inst.problem.label_at(x);
      const double value = averaged_point_value(inst.problem, x, label, inst.test, spec, pv);
      csv += csv_number(x) + "," + std::to_string(label) + "," +
             csv_number(inst.problem.boundary_distance(x)) + "," + csv_number(value) + "\n";
    }
    emit(csv, o.points_out, out);
  }
  json diagnostics{{"boundaries", inst.problem.boundaries},
                   {"starting_label", inst.problem.starting_label}};
  emit(dump(valuation_json(run.valuation, o.n, run.raw, run.target, diagnostics, m)), o.out,
       out);
  return kOk;
}

struct ShiftOpts {
  std::string grid = "0.05:0.45:0.05";
  std::size_t n = 12;
  std::size_t workers = 1;
  std::string out;
};

int cmd_shift(const ShiftOpts& o, Manifest& m, std::ostream& out) {
  std::vector<double> grid;
  try {
    grid = parse_grid(o.grid);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  m.parameters() = {{"pg", o.grid}, {"n", o.n}, {"workers", o.workers}};
  const auto rows = shift_sweep(grid, o.n, ExactOptions{}, o.workers);
  std::string csv = csv_header_comment(m) + "p_g,marginal_diff,algorithm_value\n";
  for (const auto& r : rows) {
    csv += csv_number(r.p_g) + "," + csv_number(r.marginal_diff) + "," +
           csv_number(r.algorithm_value) + "\n";
  }
  emit(csv, o.out, out);
  return kOk;
}

struct CurveOpts {
  std::string game;
  std::string data;
  std::string test;
  std::string label_column = "label";
  std::string subgroup_column;
  std::size_t samples = 100;
  std::string out;
};

int cmd_curve(const CurveOpts& o, const LearnerFlags& l, const SeedFlag& s, Manifest& m,
              std::ostream& out) {
  const auto [seed, source] = s.resolve();
  m.set_seed(seed, source);
  std::optional<GamePair> pair;
  json params{{"samples", o.samples}};
  if (!o.game.empty()) {
    pair = as_pair(load_tabular_game(m.input(o.game)));
    params["game"] = o.game;
  } else {
    if (o.data.empty() || o.test.empty()) {
      throw UsageError("curve needs --game, or --data with --test");
    }
    const CsvOptions csv{o.label_column, o.subgroup_column};
    const Dataset train = parse_csv(m.input(o.data), csv);
    const Dataset test = parse_csv(m.input(o.test), csv);
    const LearnerPairSpec spec{learner_flag(l.learner), learner_flag(l.baseline),
                               metric_flag(l.metric)};
    pair = learner_pair(spec, train, test);
    params["data"] = o.data;
    params["test"] = o.test;
    params["learner"] = to_string(spec.algorithm);
    params["baseline"] = to_string(spec.baseline);
    params["metric"] = to_string(spec.metric);
  }
  if (o.samples == 0) throw UsageError("--samples must be positive");
  m.parameters() = params;
  const auto rows = performance_curves(*pair, o.samples, seed);
  std::string csv = csv_header_comment(m) + "size,mean_v_a,mean_v_b,samples\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.size) + "," + csv_number(r.mean_v_a) + "," +
           csv_number(r.mean_v_b) + "," + std::to_string(r.samples) + "\n";
  }
  emit(csv, o.out, out);
  return kOk;
}

struct AxiomOpts {
  std::size_t n = 6;
  std::size_t trials = 100;
  double tolerance = 1e-9;
  std::string game;
  std::string out;
};

json check_json(const AxiomCheck& c) {
  return {{"axiom", to_string(c.axiom)},
          {"subject", c.subject},
          {"discrepancy", c.discrepancy},
          {"passed", c.passed}};
}

int cmd_axioms(const AxiomOpts& o, const SeedFlag& s, Manifest& m, std::ostream& out) {
  const auto [seed, source] = s.resolve();
  m.set_seed(seed, source);
  json per_axiom = json::object();
  json failures = json::array();
  std::size_t checks = 0;
  std::size_t violations = 0;
  auto record = [&](const AxiomReport& report, const std::string& where) {
    for (const auto& c : report.checks) {
      ++checks;
      auto& slot = per_axiom[to_string(c.axiom)];
      if (slot.is_null()) slot = {{"checked", 0}, {"violations", 0}};
      slot["checked"] = slot["checked"].get<std::size_t>() + 1;
      if (!c.passed) {
        ++violations;
        slot["violations"] = slot["violations"].get<std::size_t>() + 1;
        json f = check_json(c);
        f["instance"] = where;
        failures.push_back(std::move(f));
      }
    }
  };
  if (!o.game.empty()) {
    const GamePair pair = as_pair(load_tabular_game(m.input(o.game)));
    m.parameters() = {{"game", o.game}, {"tolerance", o.tolerance}};
    record(check_axioms(pair, extended_shapley(pair), o.tolerance), o.game);
  } else {
    if (o.n == 0) throw UsageError("--n must be at least 1");
    m.parameters() = {{"n", o.n}, {"trials", o.trials}, {"tolerance", o.tolerance}};
    constexpr Planted kCycle[] = {Planted::kNone, Planted::kNullDatum, Planted::kNullAlgorithm,
                                  Planted::kDuplicate, Planted::kMimic};
    for (std::size_t t = 0; t < o.trials; ++t) {
      Planted premise = kCycle[t % 5];
      if (premise == Planted::kDuplicate && o.n < 2) premise = Planted::kNone;
      const TabularPair fixture = planted_pair(o.n, derive_seed(seed, t), premise);
      const GamePair pair = fixture.as_pair();
      record(check_axioms(pair, extended_shapley(pair), o.tolerance),
             "trial " + std::to_string(t) + " (" + to_string(premise) + ")");
    }
  }
  json report{{"checks", checks},
              {"violations", violations},
              {"axioms", per_axiom},
              {"failures", failures},
              {"manifest", m.to_json()}};
  emit(dump(report), o.out, out);
  return violations == 0 ? kOk : kAxiomViolation;
}

struct StabilityOpts {
  std::string game;
  std::size_t samples = 0;
  std::string out;
};

int cmd_stability(const StabilityOpts& o, const SeedFlag& s, Manifest& m, std::ostream& out) {
  const GamePair pair = as_pair(load_tabular_game(m.input(o.game)));
  StabilityMode mode = Exhaustive{};
  json params{{"game", o.game}};
  if (o.samples > 0) {
    const auto [seed, source] = s.resolve();
    m.set_seed(seed, source);
    mode = Sampled{o.samples, seed};
    params["samples"] = o.samples;
  }
  m.parameters() = params;
  const StabilityReport r = stability_report(pair, mode);
  json j{{"n", pair.players()},
         {"mode", r.exhaustive ? "exhaustive" : "sampled"},
         {"gamma_a", r.gamma_a},
         {"gamma_b", r.gamma_b},
         {"bound", r.bound},
         {"sum_bound", r.sum_bound},
         {"algorithm_value", r.algorithm_value ? json(*r.algorithm_value) : json(nullptr)},
         {"manifest", m.to_json()}};
  emit(dump(j), o.out, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"xshap: Extended Shapley valuation of data and learning algorithms", "xshap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("xshap ") + XSHAP_VERSION);

  GameOpts exact_opts;
  auto* exact = app.add_subcommand("exact", "Exact valuation of a tabular game file");
  exact->add_option("--game", exact_opts.game, "Game file (JSON)")->required();
  exact->add_option("--method", exact_opts.method, "extended | lift | symmetric")
      ->check(CLI::IsMember({"extended", "lift", "symmetric"}))
      ->capture_default_str();
  exact->add_option("--guard", exact_opts.guard, "Largest n enumerated")->capture_default_str();
  exact->add_flag("--center", exact_opts.center, "Subtract v(empty) from each game first");
  exact->add_option("--out", exact_opts.out, "Output file (default stdout)");

  GameOpts tmc_opts;
  EngineFlags tmc_engine;
  SeedFlag tmc_seed;
  auto* tmc = app.add_subcommand("tmc", "Truncated Monte Carlo valuation of a game file");
  tmc->add_option("--game", tmc_opts.game, "Game file (JSON)")->required();
  tmc->add_flag("--center", tmc_opts.center, "Subtract v(empty) from each game first");
  tmc->add_option("--out", tmc_opts.out, "Output file (default stdout)");
  add_seed(tmc, tmc_seed);
  add_engine(tmc, tmc_engine);

  ValuateOpts val_opts;
  LearnerFlags val_learners;
  EngineFlags val_engine;
  SeedFlag val_seed;
  auto* valuate = app.add_subcommand("valuate", "Value a CSV dataset under two learners");
  valuate->add_option("--data", val_opts.data, "Training CSV")->required();
  valuate->add_option("--test", val_opts.test, "Test CSV (default: hold out from --data)");
  valuate->add_option("--holdout", val_opts.holdout, "Held-out test fraction")
      ->capture_default_str();
  valuate->add_option("--label-column", val_opts.label_column)->capture_default_str();
  valuate->add_option("--subgroup-column", val_opts.subgroup_column);
  valuate->add_option("--out", val_opts.out, "Output file (default stdout)");
  add_learners(valuate, val_learners);
  add_seed(valuate, val_seed);
  add_engine(valuate, val_engine);

  auto* experiment = app.add_subcommand("experiment", "Reproducible scenarios");
  experiment->require_subcommand(1);

  IntervalOpts int_opts;
  LearnerFlags int_learners;
  EngineFlags int_engine;
  SeedFlag int_seed;
  auto* intervals = experiment->add_subcommand("intervals", "Interval labeling study");
  intervals->add_option("--intervals", int_opts.intervals, "Even number of cells")
      ->capture_default_str();
  intervals->add_option("--n", int_opts.n, "Training size")->capture_default_str();
  intervals->add_option("--test-size", int_opts.test_size)->capture_default_str();
  intervals->add_option("--jitter", int_opts.jitter, "Boundary jitter in [0, 0.5)")
      ->capture_default_str();
  intervals->add_option("--out", int_opts.out, "Valuation JSON (default stdout)");
  intervals->add_option("--train-out", int_opts.train_out, "Write the training set as CSV");
  intervals->add_option("--curve-out", int_opts.curve_out, "Write the performance curves as CSV");
  intervals->add_option("--curve-samples", int_opts.curve_samples)->capture_default_str();
  intervals->add_option("--points", int_opts.points,
                        "Evenly spaced points to value by repeated resampling");
  intervals->add_option("--points-out", int_opts.points_out, "Point values CSV");
  intervals->add_option("--context", int_opts.context)->capture_default_str();
  intervals->add_option("--repetitions", int_opts.repetitions)->capture_default_str();
  add_learners(intervals, int_learners);
  add_seed(intervals, int_seed);
  add_engine(intervals, int_engine);

  ShiftOpts shift_opts;
  auto* shift = experiment->add_subcommand("shift", "Distribution-shift color sweep");
  shift->add_option("--pg", shift_opts.grid, "Grid lo:hi:step or a comma list")
      ->capture_default_str();
  shift->add_option("--n", shift_opts.n, "Training size")->capture_default_str();
  shift->add_option("--workers", shift_opts.workers)->capture_default_str();
  shift->add_option("--out", shift_opts.out, "Sweep CSV (default stdout)");

  CurveOpts curve_opts;
  LearnerFlags curve_learners;
  SeedFlag curve_seed;
  auto* curve = app.add_subcommand("curve", "Per-size mean performance of both games");
  curve->add_option("--game", curve_opts.game, "Game file (JSON)");
  curve->add_option("--data", curve_opts.data, "Training CSV");
  curve->add_option("--test", curve_opts.test, "Test CSV");
  curve->add_option("--label-column", curve_opts.label_column)->capture_default_str();
  curve->add_option("--subgroup-column", curve_opts.subgroup_column);
  curve->add_option("--samples", curve_opts.samples, "Subsets per size")->capture_default_str();
  curve->add_option("--out", curve_opts.out, "Curve CSV (default stdout)");
  add_learners(curve, curve_learners);
  add_seed(curve, curve_seed);

  auto* check = app.add_subcommand("check", "Property checks");
  check->require_subcommand(1);
  AxiomOpts ax_opts;
  SeedFlag ax_seed;
  auto* axioms = check->add_subcommand("axioms", "Check the axioms on exact valuations");
  axioms->add_option("--n", ax_opts.n, "Players per random pair")->capture_default_str();
  axioms->add_option("--trials", ax_opts.trials)->capture_default_str();
  axioms->add_option("--tolerance", ax_opts.tolerance)->capture_default_str();
  axioms->add_option("--game", ax_opts.game, "Check this game file instead");
  axioms->add_option("--out", ax_opts.out, "Report JSON (default stdout)");
  add_seed(axioms, ax_seed);

  StabilityOpts st_opts;
  SeedFlag st_seed;
  auto* stability = app.add_subcommand("stability", "Leave-one-out stability and bound");
  stability->add_option("--game", st_opts.game, "Game file (JSON)")->required();
  stability->add_option("--samples", st_opts.samples, "Sample (S, i) pairs instead");
  stability->add_option("--out", st_opts.out, "Report JSON (default stdout)");
  add_seed(stability, st_seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "xshap: " << e.what() << "\n";
    return kUsage;
  }

  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  Manifest manifest(command, args);
  try {
    if (exact->parsed()) return cmd_exact(exact_opts, manifest, out);
    if (tmc->parsed()) return cmd_tmc(tmc_opts, tmc_engine, tmc_seed, manifest, out);
    if (valuate->parsed()) {
      return cmd_valuate(val_opts, val_learners, val_engine, val_seed, manifest, out);
    }
    if (intervals->parsed()) {
      return cmd_intervals(int_opts, int_learners, int_engine, int_seed, manifest, out);
    }
    if (shift->parsed()) return cmd_shift(shift_opts, manifest, out);
    if (curve->parsed()) return cmd_curve(curve_opts, curve_learners, curve_seed, manifest, out);
    if (axioms->parsed()) return cmd_axioms(ax_opts, ax_seed, manifest, out);
    if (stability->parsed()) return cmd_stability(st_opts, st_seed, manifest, out);
  } catch (const UsageError& e) {
    err << "xshap: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardError& e) {
    err << "xshap: " << e.what() << "\n";
    return kGuardRefusal;
  } catch (const Error& e) {
    err << "xshap: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "xshap: " << e.what() << "\n";
    return kDataError;
  }
  err << "xshap: no command given\n";
  return kUsage;
}

}  // namespace xshap::cli

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

#include "xshap/learners.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <utility>

#include "xshap/error.hpp"

namespace xshap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    d += diff * diff;
  }
  return d;
}

std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> params;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw DomainError("learner parameter \"" + std::string(item) + "\" is not key=value");
    }
    params[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    pos = comma + 1;
  }
  return params;
}

double to_double(const std::string& s, const std::string& name) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DomainError("learner parameter " + name + "=\"" + s + "\" is not a number");
  }
  return v;
}

std::size_t to_count(const std::string& s, const std::string& name) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || v < 0) {
    throw DomainError("learner parameter " + name + "=\"" + s + "\" is not a count");
  }
  return static_cast<std::size_t>(v);
}

Model train_linear(const LogisticRegression& spec, const Dataset& data,
                   std::span<const std::size_t> subset) {
  const std::size_t dims = data.dims();
  const std::size_t classes = std::max<std::size_t>(1, data.classes());
  const std::size_t stride = dims + 1;
  std::vector<double> w(classes * stride, 0.0);
  std::vector<double> grad(w.size());
  std::vector<double> prob(classes);
  const double inv_m = 1.0 / static_cast<double>(subset.size());

  for (std::size_t it = 0; it < spec.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i : subset) {
      const auto x = data.features(i);
      double top = -INFINITY;
      for (std::size_t c = 0; c < classes; ++c) {
        double z = w[c * stride + dims];
        for (std::size_t j = 0; j < dims; ++j) z += w[c * stride + j] * x[j];
        prob[c] = z;
        top = std::max(top, z);
      }
      double norm = 0.0;
      for (std::size_t c = 0; c < classes; ++c) {
        prob[c] = std::exp(prob[c] - top);
        norm += prob[c];
      }
      const auto y = static_cast<std::size_t>(data.label(i));
      for (std::size_t c = 0; c < classes; ++c) {
        const double g = prob[c] / norm - (c == y ? 1.0 : 0.0);
        for (std::size_t j = 0; j < dims; ++j) grad[c * stride + j] += g * x[j];
        grad[c * stride + dims] += g;
      }
    }
    for (std::size_t c = 0; c < classes; ++c) {
      for (std::size_t j = 0; j < stride; ++j) {
        double g = grad[c * stride + j] * inv_m;
        if (j < dims) g += spec.l2 * w[c * stride + j];
        w[c * stride + j] -= spec.learning_rate * g;
      }
    }
  }
  return Model(dims, Model::Linear{classes, dims, std::move(w)});
}

}  // namespace

void validate(const LearnerSpec& spec) {
  std::visit(overloaded{
                 [](const MajorityVote&) {},
                 [](const Knn& k) {
                   if (k.k < 1) throw DomainError("knn needs k >= 1");
                 },
                 [](const LogisticRegression& lr) {
                   if (lr.iterations < 1) throw DomainError("logreg needs iters >= 1");
                   if (!(lr.learning_rate > 0.0)) throw DomainError("logreg needs lr > 0");
                   if (!(lr.l2 >= 0.0)) throw DomainError("logreg needs l2 >= 0");
                 },
             },
             spec);
}

LearnerSpec parse_learner(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const auto params =
      parse_params(colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1));
  auto reject_unknown = [&](std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
      if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
        throw DomainError("unknown parameter \"" + key + "\" for learner " + std::string(name));
      }
    }
  };

  LearnerSpec spec;
  if (name == "majority") {
    reject_unknown({});
    spec = MajorityVote{};
  } else if (name == "knn") {
    reject_unknown({"k"});
    Knn knn;
    if (auto it = params.find("k"); it != params.end()) knn.k = to_count(it->second, "k");
    spec = knn;
  } else if (name == "logreg") {
    reject_unknown({"lr", "iters", "l2"});
    LogisticRegression lr;
    if (auto it = params.find("lr"); it != params.end()) lr.learning_rate = to_double(it->second, "lr");
    if (auto it = params.find("iters"); it != params.end()) lr.iterations = to_count(it->second, "iters");
    if (auto it = params.find("l2"); it != params.end()) lr.l2 = to_double(it->second, "l2");
    spec = lr;
  } else {
    throw DomainError("unknown learner \"" + std::string(name) +
                      "\" (expected majority, knn or logreg)");
  }
  validate(spec);
  return spec;
}

namespace {

// Shortest text that parses back to the same double.
std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string to_string(const LearnerSpec& spec) {
  return std::visit(overloaded{
                        [](const MajorityVote&) { return std::string("majority"); },
                        [](const Knn& k) { return "knn:k=" + std::to_string(k.k); },
                        [](const LogisticRegression& lr) {
                          return "logreg:lr=" + shortest(lr.learning_rate) +
                                 ",iters=" + std::to_string(lr.iterations) +
                                 ",l2=" + shortest(lr.l2);
                        },
                    },
                    spec);
}

int majority_label(std::span<const int> labels, std::size_t classes) {
  if (labels.empty()) return 0;
  std::vector<std::size_t> counts(std::max<std::size_t>(classes, 1), 0);
  for (int y : labels) {
    if (static_cast<std::size_t>(y) >= counts.size()) counts.resize(static_cast<std::size_t>(y) + 1, 0);
    ++counts[static_cast<std::size_t>(y)];
  }
  // max_element returns the first maximum, i.e. the lowest class on ties.
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Model train(const LearnerSpec& spec, const Dataset& data, std::span<const std::size_t> subset) {
  validate(spec);
  std::vector<std::size_t> members(subset.begin(), subset.end());
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw DomainError("training subset lists a point twice");
  }
  if (!members.empty() && members.back() >= data.size()) {
    throw DomainError("training subset index out of range");
  }
  if (members.empty()) return Model(data.dims(), Model::Constant{0});

  return std::visit(
      overloaded{
          [&](const MajorityVote&) {
            std::vector<int> labels;
            labels.reserve(members.size());
            for (std::size_t i : members) labels.push_back(data.label(i));
            return Model(data.dims(), Model::Constant{majority_label(labels, data.classes())});
          },
          [&](const Knn& knn) {
            return Model(data.dims(), Model::Neighbors{knn.k, data.classes(), data.subset(members)});
          },
          [&](const LogisticRegression& lr) { return train_linear(lr, data, members); },
      },
      spec);
}

Model train(const LearnerSpec& spec, const Dataset& data) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return train(spec, data, all);
}

int predict(const Model& model, std::span<const double> features) {
  if (features.size() != model.dims()) {
    throw DomainError("query has " + std::to_string(features.size()) +
                      " features, model expects " + std::to_string(model.dims()));
  }
  return std::visit(
      overloaded{
          [](const Model::Constant& c) { return c.label; },
          [&](const Model::Neighbors& nn) {
            const Dataset& pts = nn.points;
            std::vector<std::pair<double, std::size_t>> ranked(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) {
              ranked[i] = {squared_distance(pts.features(i), features), i};
            }
            const std::size_t k = std::min(nn.k, ranked.size());
            std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                              ranked.end());
            std::vector<int> votes;
            votes.reserve(k);
            for (std::size_t r = 0; r < k; ++r) votes.push_back(pts.label(ranked[r].second));
            return majority_label(votes, nn.classes);
          },
          [&](const Model::Linear& lin) {
            const std::size_t stride = lin.dims + 1;
            int best = 0;
            double best_z = -INFINITY;
            for (std::size_t c = 0; c < lin.classes; ++c) {
              double z = lin.weights[c * stride + lin.dims];
              for (std::size_t j = 0; j < lin.dims; ++j) z += lin.weights[c * stride + j] * features[j];
              if (z > best_z) {
                best_z = z;
                best = static_cast<int>(c);
              }
            }
            return best;
          },
      },
      model.body());
}

// ---------------------------------------------------------------------------

Metric parse_metric(std::string_view text) {
  if (text == "accuracy") return Metric{MetricKind::kAccuracy};
  if (text == "equity") return Metric{MetricKind::kEquity};
  throw DomainError("unknown metric \"" + std::string(text) + "\" (expected accuracy or equity)");
}

std::string to_string(const Metric& metric) {
  return metric.kind == MetricKind::kAccuracy ? "accuracy" : "equity";
}

double equity(const std::map<std::string, double>& subgroup_accuracy) {
  if (subgroup_accuracy.empty()) throw DomainError("equity needs at least one subgroup");
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& [group, acc] : subgroup_accuracy) {
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
  }
  return 1.0 - (hi - lo);
}

ScoreTally::ScoreTally(const Dataset& test, const Metric& metric) : metric_(metric) {
  if (test.empty()) throw DomainError("cannot score on an empty test set");
  group_index_.assign(test.size(), 0);
  if (metric.kind == MetricKind::kAccuracy) {
    names_ = {"all"};
    totals_ = {test.size()};
    return;
  }
  if (!test.fully_tagged()) {
    throw DomainError("equity metric needs a subgroup tag on every test point");
  }
  for (std::size_t i = 0; i < test.size(); ++i) names_.push_back(*test.subgroup(i));
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  totals_.assign(names_.size(), 0);
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto g = static_cast<std::size_t>(
        std::lower_bound(names_.begin(), names_.end(), *test.subgroup(i)) - names_.begin());
    group_index_[i] = g;
    ++totals_[g];
  }
}

double ScoreTally::score(std::span<const std::size_t> correct_per_group) const {
  if (metric_.kind == MetricKind::kAccuracy) {
    return static_cast<double>(correct_per_group[0]) / static_cast<double>(totals_[0]);
  }
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t g = 0; g < totals_.size(); ++g) {
    const double acc =
        static_cast<double>(correct_per_group[g]) / static_cast<double>(totals_[g]);
    lo = std::min(lo, acc);
    hi = std::max(hi, acc);
  }
  return 1.0 - (hi - lo);
}

double score(const Model& model, const Dataset& test, const Metric& metric) {
  const ScoreTally tally(test, metric);
  std::vector<std::size_t> correct(tally.groups(), 0);
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (predict(model, test.features(i)) == test.label(i)) ++correct[tally.group_of(i)];
  }
  return tally.score(correct);
}

}  // namespace xshap

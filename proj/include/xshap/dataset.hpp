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

#ifndef XSHAP_DATASET_HPP
#define XSHAP_DATASET_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xshap {

// Labeled points with a fixed feature dimension. Labels are class ids
// 0..K-1; subgroup tags are optional and only needed by the equity metric.
class Dataset {
 public:
  explicit Dataset(std::size_t dims) : dims_(dims) {}

  // Throws DomainError on a dimension mismatch or a negative label.
  void add(std::span<const double> features, int label,
           std::optional<std::string> subgroup = std::nullopt);
  void add(std::initializer_list<double> features, int label,
           std::optional<std::string> subgroup = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t dims() const noexcept { return dims_; }
  // Number of classes: one more than the largest label (0 when empty).
  std::size_t classes() const noexcept { return classes_; }

  std::span<const double> features(std::size_t i) const {
    return {features_.data() + i * dims_, dims_};
  }
  int label(std::size_t i) const { return labels_[i]; }
  const std::optional<std::string>& subgroup(std::size_t i) const { return subgroups_[i]; }
  // True when every point carries a subgroup tag.
  bool fully_tagged() const;

  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dims_;
  std::size_t classes_ = 0;
  std::vector<double> features_;  // row-major
  std::vector<int> labels_;
  std::vector<std::optional<std::string>> subgroups_;
};

struct CsvOptions {
  std::string label_column = "label";
  // Empty: no subgroup column.
  std::string subgroup_column;
};

// Header row required. The label column must hold non-negative integers;
// every other column except the subgroup column is parsed as a real
// feature. Throws FormatError on malformed content.
Dataset parse_csv(std::string_view text, const CsvOptions& options);
Dataset load_csv(const std::string& path, const CsvOptions& options);
std::string to_csv(const Dataset& data, const CsvOptions& options);

}  // namespace xshap

#endif  // XSHAP_DATASET_HPP

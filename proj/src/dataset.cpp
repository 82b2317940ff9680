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

#include "xshap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "xshap/error.hpp"

namespace xshap {

void Dataset::add(std::span<const double> features, int label,
                  std::optional<std::string> subgroup) {
  if (features.size() != dims_) {
    throw DomainError("point has " + std::to_string(features.size()) +
                      " features, dataset expects " + std::to_string(dims_));
  }
  if (label < 0) throw DomainError("labels must be non-negative class ids");
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
  subgroups_.push_back(std::move(subgroup));
  classes_ = std::max(classes_, static_cast<std::size_t>(label) + 1);
}

void Dataset::add(std::initializer_list<double> features, int label,
                  std::optional<std::string> subgroup) {
  add(std::span<const double>(features.begin(), features.size()), label, std::move(subgroup));
}

bool Dataset::fully_tagged() const {
  return std::all_of(subgroups_.begin(), subgroups_.end(),
                     [](const auto& g) { return g.has_value(); });
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(dims_);
  for (std::size_t i : indices) {
    if (i >= size()) throw DomainError("subset index out of range");
    out.add(features(i), labels_[i], subgroups_[i]);
  }
  return out;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cell += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(std::move(cell));
  for (auto& c : cells) {
    const auto first = c.find_first_not_of(" \t");
    const auto last = c.find_last_not_of(" \t");
    c = first == std::string::npos ? std::string() : c.substr(first, last - first + 1);
  }
  return cells;
}

double parse_real(const std::string& cell, std::size_t row, const std::string& column) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size()) {
    throw FormatError("row " + std::to_string(row) + ", column \"" + column +
                      "\": \"" + cell + "\" is not a number");
  }
  return value;
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& options) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw FormatError("CSV is empty (a header row is required)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_row(line);

  std::ptrdiff_t label_col = -1;
  std::ptrdiff_t group_col = -1;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == options.label_column) {
      label_col = static_cast<std::ptrdiff_t>(c);
    } else if (!options.subgroup_column.empty() && header[c] == options.subgroup_column) {
      group_col = static_cast<std::ptrdiff_t>(c);
    } else {
      feature_cols.push_back(c);
    }
  }
  if (label_col < 0) throw FormatError("CSV has no label column \"" + options.label_column + "\"");
  if (!options.subgroup_column.empty() && group_col < 0) {
    throw FormatError("CSV has no subgroup column \"" + options.subgroup_column + "\"");
  }

  Dataset data(feature_cols.size());
  std::vector<double> features(feature_cols.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      throw FormatError("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                        " cells, header has " + std::to_string(header.size()));
    }
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      features[f] = parse_real(cells[feature_cols[f]], row, header[feature_cols[f]]);
    }
    const std::string& label_cell = cells[static_cast<std::size_t>(label_col)];
    int label = -1;
    const auto [end, ec] =
        std::from_chars(label_cell.data(), label_cell.data() + label_cell.size(), label);
    if (ec != std::errc() || end != label_cell.data() + label_cell.size() || label < 0) {
      throw FormatError("row " + std::to_string(row) + ": label \"" + label_cell +
                        "\" is not a non-negative integer class id");
    }
    std::optional<std::string> group;
    if (group_col >= 0) {
      const std::string& g = cells[static_cast<std::size_t>(group_col)];
      if (!g.empty()) group = g;
    }
    data.add(features, label, std::move(group));
  }
  return data;
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read CSV file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), options);
}

std::string to_csv(const Dataset& data, const CsvOptions& options) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t f = 0; f < data.dims(); ++f) out << 'x' << f << ',';
  out << options.label_column;
  if (!options.subgroup_column.empty()) out << ',' << options.subgroup_column;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double x : data.features(i)) out << x << ',';
    out << data.label(i);
    if (!options.subgroup_column.empty()) out << ',' << data.subgroup(i).value_or("");
    out << '\n';
  }
  return out.str();
}

}  // namespace xshap

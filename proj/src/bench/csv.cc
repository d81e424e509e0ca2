// Copyright 2026 The DPOAD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpoad/bench/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace dpoad {
namespace {

absl::StatusOr<double> ParseCell(absl::string_view cell, int64_t row,
                                 int col) {
  cell = absl::StripAsciiWhitespace(cell);
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", row, ", column ", col, ": not a finite number: '", cell, "'"));
  }
  return value;
}

}  // namespace

absl::StatusOr<CsvDataset> ParseCsv(absl::string_view text,
                                    const CsvSchema& schema) {
  if (schema.rows_per_window < 0) {
    return absl::InvalidArgumentError("rows_per_window must be >= 0");
  }
  CsvDataset out;
  std::vector<int> features = schema.feature_columns;
  int columns = -1;
  std::map<int64_t, std::pair<std::vector<Record>, std::vector<bool>>> grouped;
  std::vector<Record> records;
  std::vector<bool> labels;

  int64_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<absl::string_view> cells =
        absl::StrSplit(line, schema.delimiter);
    if (columns < 0) {
      columns = static_cast<int>(cells.size());
      for (int c : {schema.label_column, schema.window_column}) {
        if (c >= columns) {
          return absl::InvalidArgumentError(absl::StrCat(
              "column ", c, " out of range for ", columns, " columns"));
        }
      }
      if (features.empty()) {
        for (int c = 0; c < columns; ++c) {
          if (c != schema.label_column && c != schema.window_column) {
            features.push_back(c);
          }
        }
      }
      if (features.empty()) {
        return absl::InvalidArgumentError("no feature columns");
      }
      for (int c : features) {
        if (c < 0 || c >= columns) {
          return absl::InvalidArgumentError(absl::StrCat(
              "feature column ", c, " out of range for ", columns,
              " columns"));
        }
      }
      if (schema.has_header) {
        for (auto cell : cells) {
          out.header.emplace_back(absl::StripAsciiWhitespace(cell));
        }
        continue;
      }
    }
    if (static_cast<int>(cells.size()) != columns) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected ", columns,
                       " columns, got ", cells.size()));
    }
    Record record;
    record.attributes.reserve(features.size());
    for (int c : features) {
      auto v = ParseCell(cells[c], line_no, c);
      if (!v.ok()) return v.status();
      record.attributes.push_back(*v);
    }
    bool label = false;
    if (schema.label_column >= 0) {
      auto v = ParseCell(cells[schema.label_column], line_no,
                         schema.label_column);
      if (!v.ok()) return v.status();
      if (*v != 0.0 && *v != 1.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_no, ", column ", schema.label_column,
                         ": label must be 0 or 1"));
      }
      label = *v == 1.0;
    }
    if (schema.window_column >= 0) {
      auto v = ParseCell(cells[schema.window_column], line_no,
                         schema.window_column);
      if (!v.ok()) return v.status();
      if (*v != std::floor(*v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_no, ", column ", schema.window_column,
                         ": window id must be an integer"));
      }
      auto& [rs, ls] = grouped[static_cast<int64_t>(*v)];
      rs.push_back(std::move(record));
      ls.push_back(label);
    } else {
      records.push_back(std::move(record));
      labels.push_back(label);
    }
    ++out.rows;
  }
  if (out.rows == 0) return absl::InvalidArgumentError("no data rows");

  const bool has_labels = schema.label_column >= 0;
  if (schema.window_column >= 0) {
    for (auto& [id, group] : grouped) {
      out.windows.push_back(std::move(group.first));
      if (has_labels) out.labels.push_back(std::move(group.second));
    }
    return out;
  }
  const int64_t chunk = schema.rows_per_window > 0
                            ? schema.rows_per_window
                            : static_cast<int64_t>(records.size());
  for (int64_t start = 0; start < static_cast<int64_t>(records.size());
       start += chunk) {
    const int64_t stop =
        std::min<int64_t>(start + chunk, static_cast<int64_t>(records.size()));
    out.windows.emplace_back(std::make_move_iterator(records.begin() + start),
                             std::make_move_iterator(records.begin() + stop));
    if (has_labels) {
      out.labels.emplace_back(labels.begin() + start, labels.begin() + stop);
    }
  }
  return out;
}

absl::StatusOr<CsvDataset> IngestCsv(const std::string& path,
                                     const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto parsed = ParseCsv(buffer.str(), schema);
  if (!parsed.ok()) {
    return absl::Status(parsed.status().code(),
                        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

}  // namespace dpoad

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

#include "dpoad/bench/results.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "dpoad/protocol/serialization.h"
#include "json.hpp"

namespace dpoad {
namespace {

constexpr std::array<absl::string_view, 13> kColumns = {
    "mechanism", "epsilon",   "gamma",  "threshold",        "iteration",
    "seed",      "precision", "recall", "runtime_ms",       "sensitivity_used",
    "k",         "m",         "phase_switch_iter"};

std::vector<std::string> Cells(const ResultRow& r) {
  return {std::string(MechanismName(r.mechanism)),
          FormatDouble(r.epsilon),
          FormatDouble(r.gamma),
          FormatDouble(r.threshold),
          absl::StrCat(r.iteration),
          absl::StrCat(r.seed),
          FormatDouble(r.precision),
          FormatDouble(r.recall),
          FormatDouble(r.runtime_ms),
          FormatDouble(r.sensitivity_used),
          absl::StrCat(r.k),
          absl::StrCat(r.m),
          absl::StrCat(r.phase_switch_iter)};
}

template <typename T>
absl::Status ParseNumber(absl::string_view cell, T& out, int64_t line,
                         absl::string_view column) {
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", line, ", column ", column, ": cannot parse '", cell, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> ParseCsvResults(absl::string_view text) {
  std::vector<ResultRow> rows;
  int64_t line_no = 0;
  bool header = false;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<absl::string_view> cells = absl::StrSplit(line, ',');
    if (!header) {
      if (!std::equal(cells.begin(), cells.end(), kColumns.begin(),
                      kColumns.end())) {
        return absl::InvalidArgumentError("unexpected results header");
      }
      header = true;
      continue;
    }
    if (cells.size() != kColumns.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected ", kColumns.size(),
                       " columns, got ", cells.size()));
    }
    ResultRow r;
    auto mech = ParseMechanism(cells[0]);
    if (!mech.ok()) return mech.status();
    r.mechanism = *mech;
    absl::Status s;
    auto parse = [&](size_t i, auto& field) {
      if (s.ok()) s = ParseNumber(cells[i], field, line_no, kColumns[i]);
    };
    parse(1, r.epsilon);
    parse(2, r.gamma);
    parse(3, r.threshold);
    parse(4, r.iteration);
    parse(5, r.seed);
    parse(6, r.precision);
    parse(7, r.recall);
    parse(8, r.runtime_ms);
    parse(9, r.sensitivity_used);
    parse(10, r.k);
    parse(11, r.m);
    parse(12, r.phase_switch_iter);
    if (!s.ok()) return s;
    rows.push_back(r);
  }
  if (!header) return absl::InvalidArgumentError("missing results header");
  return rows;
}

absl::StatusOr<std::vector<ResultRow>> ParseJsonResults(absl::string_view text) {
  const nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    return absl::InvalidArgumentError("results JSON must be an array");
  }
  std::vector<ResultRow> rows;
  for (const auto& obj : doc) {
    if (!obj.is_object()) {
      return absl::InvalidArgumentError("results entries must be objects");
    }
    for (auto column : kColumns) {
      if (!obj.contains(std::string(column))) {
        return absl::InvalidArgumentError(
            absl::StrCat("results entry lacks '", column, "'"));
      }
    }
    try {
      ResultRow r;
      auto mech = ParseMechanism(obj["mechanism"].get<std::string>());
      if (!mech.ok()) return mech.status();
      r.mechanism = *mech;
      r.epsilon = obj["epsilon"].get<double>();
      r.gamma = obj["gamma"].get<double>();
      r.threshold = obj["threshold"].get<double>();
      r.iteration = obj["iteration"].get<int64_t>();
      r.seed = obj["seed"].get<int64_t>();
      r.precision = obj["precision"].get<double>();
      r.recall = obj["recall"].get<double>();
      r.runtime_ms = obj["runtime_ms"].get<double>();
      r.sensitivity_used = obj["sensitivity_used"].get<double>();
      r.k = obj["k"].get<int64_t>();
      r.m = obj["m"].get<int64_t>();
      r.phase_switch_iter = obj["phase_switch_iter"].get<int64_t>();
      rows.push_back(r);
    } catch (const nlohmann::json::exception& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad results entry: ", e.what()));
    }
  }
  return rows;
}

}  // namespace

absl::StatusOr<ResultFormat> ParseResultFormat(absl::string_view name) {
  if (name == "csv") return ResultFormat::kCsv;
  if (name == "json") return ResultFormat::kJson;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown result format '", name, "'"));
}

std::span<const absl::string_view> ResultColumns() { return kColumns; }

std::string FormatResults(std::span<const ResultRow> rows,
                          ResultFormat format) {
  if (format == ResultFormat::kCsv) {
    std::string out = absl::StrCat(absl::StrJoin(kColumns, ","), "\n");
    for (const auto& r : rows) {
      absl::StrAppend(&out, absl::StrJoin(Cells(r), ","), "\n");
    }
    return out;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json obj;
    obj["mechanism"] = std::string(MechanismName(r.mechanism));
    obj["epsilon"] = r.epsilon;
    obj["gamma"] = r.gamma;
    obj["threshold"] = r.threshold;
    obj["iteration"] = r.iteration;
    obj["seed"] = r.seed;
    obj["precision"] = r.precision;
    obj["recall"] = r.recall;
    obj["runtime_ms"] = r.runtime_ms;
    obj["sensitivity_used"] = r.sensitivity_used;
    obj["k"] = r.k;
    obj["m"] = r.m;
    obj["phase_switch_iter"] = r.phase_switch_iter;
    doc.push_back(std::move(obj));
  }
  return doc.dump(1) + "\n";
}

absl::StatusOr<std::vector<ResultRow>> ParseResults(absl::string_view text,
                                                    ResultFormat format) {
  return format == ResultFormat::kCsv ? ParseCsvResults(text)
                                      : ParseJsonResults(text);
}

absl::Status EmitResults(std::span<const ResultRow> rows, ResultFormat format,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << FormatResults(rows, format);
  out.flush();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ResultRow>> ReadResults(const std::string& path,
                                                   ResultFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseResults(buffer.str(), format);
}

double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

double MedianOf(std::span<const ResultRow> rows,
                const std::function<bool(const ResultRow&)>& keep,
                double ResultRow::*field) {
  std::vector<double> values;
  for (const auto& r : rows) {
    if (keep(r)) values.push_back(r.*field);
  }
  return Median(std::move(values));
}

}  // namespace dpoad

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

#ifndef DPOAD_BENCH_RESULTS_H_
#define DPOAD_BENCH_RESULTS_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpoad/bench/experiment.h"

namespace dpoad {

enum class ResultFormat { kCsv, kJson };

absl::StatusOr<ResultFormat> ParseResultFormat(absl::string_view name);

// Column order of both formats.
std::span<const absl::string_view> ResultColumns();

// CSV has a header line and one line per row; JSON is an array of objects.
// Doubles use the shortest round-trip form, so parsing reproduces the rows.
std::string FormatResults(std::span<const ResultRow> rows,
                          ResultFormat format);
absl::StatusOr<std::vector<ResultRow>> ParseResults(absl::string_view text,
                                                    ResultFormat format);

absl::Status EmitResults(std::span<const ResultRow> rows, ResultFormat format,
                         const std::string& path);
absl::StatusOr<std::vector<ResultRow>> ReadResults(const std::string& path,
                                                   ResultFormat format);

// Median of the values (mean of the two middle ones for even sizes); NaN
// when empty.
double Median(std::vector<double> values);

// Median of field(row) over the rows that satisfy `keep`.
double MedianOf(std::span<const ResultRow> rows,
                const std::function<bool(const ResultRow&)>& keep,
                double ResultRow::*field);

}  // namespace dpoad

#endif  // DPOAD_BENCH_RESULTS_H_

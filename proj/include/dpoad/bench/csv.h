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

#ifndef DPOAD_BENCH_CSV_H_
#define DPOAD_BENCH_CSV_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpoad/core/types.h"

namespace dpoad {

// Layout of a numeric CSV dataset. Column indices are 0-based.
struct CsvSchema {
  bool has_header = false;
  char delimiter = ',';
  // Columns that become record attributes. Empty: every column other than
  // the label and window columns.
  std::vector<int> feature_columns;
  // Optional 0/1 anomaly label per row.
  int label_column = -1;
  // Optional integer window id per row. Without it, consecutive chunks of
  // rows_per_window rows form the windows (0: a single window).
  int window_column = -1;
  int64_t rows_per_window = 0;
};

struct CsvDataset {
  std::vector<std::string> header;
  // Records per window, windows in ascending id (or file) order.
  std::vector<std::vector<Record>> windows;
  // Per-row labels aligned with `windows`; empty without a label column.
  std::vector<std::vector<bool>> labels;
  int64_t rows = 0;
};

// Cell errors name the 1-based file line and the 0-based column index.
absl::StatusOr<CsvDataset> ParseCsv(absl::string_view text,
                                    const CsvSchema& schema);
absl::StatusOr<CsvDataset> IngestCsv(const std::string& path,
                                     const CsvSchema& schema);

}  // namespace dpoad

#endif  // DPOAD_BENCH_CSV_H_

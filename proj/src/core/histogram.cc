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

#include "dpoad/core/histogram.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace dpoad {

absl::StatusOr<Histogram> Histogram::Create(std::vector<double> bin_edges,
                                            std::vector<int64_t> counts,
                                            int64_t window) {
  if (auto status = ValidateBinEdges(bin_edges); !status.ok()) return status;
  if (counts.size() + 1 != bin_edges.size()) {
    return absl::InvalidArgumentError(
        "histogram needs exactly one more edge than counts");
  }
  for (int64_t c : counts) {
    if (c < 0) return absl::InvalidArgumentError("negative histogram count");
  }
  return Histogram(std::move(bin_edges), std::move(counts), window);
}

int64_t Histogram::Total() const {
  return std::accumulate(counts_.begin(), counts_.end(), int64_t{0});
}

absl::Status ValidateBinEdges(std::span<const double> edges) {
  if (edges.size() < 2) {
    return absl::InvalidArgumentError("need at least two bin edges");
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) {
      return absl::InvalidArgumentError("bin edges must be finite");
    }
    if (i > 0 && !(edges[i] > edges[i - 1])) {
      return absl::InvalidArgumentError(
          absl::StrCat("bin edges must be strictly increasing at index ", i));
    }
  }
  return absl::OkStatus();
}

int64_t BinIndex(std::span<const double> edges, double value) {
  const int64_t bins = static_cast<int64_t>(edges.size()) - 1;
  // First edge strictly greater than value; its predecessor opens the bin.
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  const int64_t idx = static_cast<int64_t>(it - edges.begin()) - 1;
  return std::clamp<int64_t>(idx, 0, bins - 1);
}

absl::StatusOr<Histogram> BuildHistogram(std::span<const Record> records,
                                         std::span<const double> bin_edges,
                                         int attribute_index,
                                         int64_t window) {
  if (auto status = ValidateBinEdges(bin_edges); !status.ok()) return status;
  if (attribute_index < 0) {
    return absl::InvalidArgumentError("attribute index must be >= 0");
  }
  std::vector<int64_t> counts(bin_edges.size() - 1, 0);
  for (size_t r = 0; r < records.size(); ++r) {
    const auto& attrs = records[r].attributes;
    if (attribute_index >= static_cast<int>(attrs.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", r, " has no attribute ", attribute_index));
    }
    const double v = attrs[attribute_index];
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", r, " has a non-finite value"));
    }
    ++counts[BinIndex(bin_edges, v)];
  }
  return Histogram::Create(
      std::vector<double>(bin_edges.begin(), bin_edges.end()),
      std::move(counts), window);
}

absl::StatusOr<std::vector<double>> EqualWidthEdges(double lo, double hi,
                                                    int bins) {
  if (bins < 1) return absl::InvalidArgumentError("need at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    return absl::InvalidArgumentError("range must be finite");
  }
  if (hi < lo) return absl::InvalidArgumentError("range is reversed");
  if (hi == lo) {
    // Degenerate range: widen symmetrically so edges stay increasing.
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> edges(bins + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) edges[i] = lo + width * i;
  edges.back() = hi;
  return edges;
}

absl::StatusOr<CountMatrix> StackHistograms(
    std::span<const Histogram> windows) {
  if (windows.empty()) return CountMatrix::Zeros(0, 0);
  const int64_t bins = windows.front().bins();
  CountMatrix out = CountMatrix::Zeros(bins, windows.size());
  for (size_t w = 0; w < windows.size(); ++w) {
    if (windows[w].bins() != bins) {
      return absl::InvalidArgumentError("histograms disagree on bin count");
    }
    for (int64_t b = 0; b < bins; ++b) {
      if (auto s = out.Set(b, w, windows[w].counts()[b]); !s.ok()) return s;
    }
  }
  return out;
}

}  // namespace dpoad

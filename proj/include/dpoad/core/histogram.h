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

#ifndef DPOAD_CORE_HISTOGRAM_H_
#define DPOAD_CORE_HISTOGRAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpoad/core/types.h"

namespace dpoad {

// Binned record counts for one time window.
class Histogram {
 public:
  static absl::StatusOr<Histogram> Create(std::vector<double> bin_edges,
                                          std::vector<int64_t> counts,
                                          int64_t window);

  std::span<const double> bin_edges() const { return bin_edges_; }
  std::span<const int64_t> counts() const { return counts_; }
  int64_t bins() const { return static_cast<int64_t>(counts_.size()); }
  int64_t window() const { return window_; }
  int64_t Total() const;

 private:
  Histogram(std::vector<double> edges, std::vector<int64_t> counts,
            int64_t window)
      : bin_edges_(std::move(edges)), counts_(std::move(counts)),
        window_(window) {}

  std::vector<double> bin_edges_;
  std::vector<int64_t> counts_;
  int64_t window_ = 0;
};

// Checks that edges are finite, strictly increasing and define >= 1 bin.
absl::Status ValidateBinEdges(std::span<const double> edges);

// Bin index for value. Values below edges.front() land in bin 0 and values at
// or above edges.back() land in the last bin, so tail values are never
// dropped before privatization.
int64_t BinIndex(std::span<const double> edges, double value);

// counts[j] = #{records : edge[j] <= value < edge[j+1]} with boundary clamping.
absl::StatusOr<Histogram> BuildHistogram(std::span<const Record> records,
                                         std::span<const double> bin_edges,
                                         int attribute_index,
                                         int64_t window = 0);

// `bins` equal-width bins spanning [lo, hi].
absl::StatusOr<std::vector<double>> EqualWidthEdges(double lo, double hi,
                                                    int bins);

// Histograms of consecutive windows stacked as columns.
absl::StatusOr<CountMatrix> StackHistograms(std::span<const Histogram> windows);

}  // namespace dpoad

#endif  // DPOAD_CORE_HISTOGRAM_H_

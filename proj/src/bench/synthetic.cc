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

#include "dpoad/bench/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"
#include "dpoad/core/histogram.h"

namespace dpoad {

absl::Status SyntheticSpec::Validate() const {
  if (bins < 1) return absl::InvalidArgumentError("need at least one bin");
  if (!rates.empty() && static_cast<int>(rates.size()) != bins) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", rates.size(), " rates for ", bins, " bins"));
  }
  for (double r : BinRates()) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      return absl::InvalidArgumentError("Poisson rates must be >= 0");
    }
  }
  if (!(anomaly_rate >= 0.0 && anomaly_rate < 0.5)) {
    return absl::InvalidArgumentError("anomaly rate must lie in [0, 0.5)");
  }
  if (!(magnitude >= 0.0)) {
    return absl::InvalidArgumentError("magnitude must be >= 0");
  }
  if (windows_per_iteration < 1 || iterations < 1) {
    return absl::InvalidArgumentError("need >= 1 window and iteration");
  }
  if (!(range_hi > range_lo)) {
    return absl::InvalidArgumentError("empty attribute range");
  }
  return absl::OkStatus();
}

std::vector<double> SyntheticSpec::BinRates() const {
  if (!rates.empty()) return rates;
  std::vector<double> out(bins);
  for (int b = 0; b < bins; ++b) {
    out[b] = bins == 1 ? rate_lo
                       : rate_lo + (rate_hi - rate_lo) * b / (bins - 1);
  }
  return out;
}

absl::StatusOr<SyntheticData> GenerateSynthetic(const SyntheticSpec& spec,
                                                uint64_t seed) {
  if (auto s = spec.Validate(); !s.ok()) return s;
  SyntheticData data;
  auto edges = EqualWidthEdges(spec.range_lo, spec.range_hi, spec.bins);
  if (!edges.ok()) return edges.status();
  data.bin_edges = *std::move(edges);
  data.rates = spec.BinRates();

  const int64_t windows = spec.windows_per_iteration;
  for (int it = 0; it < spec.iterations; ++it) {
    Rng rng = Rng(seed).Fork(static_cast<uint64_t>(it));
    CountMatrix counts = CountMatrix::Zeros(spec.bins, windows);
    std::vector<bool> injected(spec.bins * windows, false);
    for (int b = 0; b < spec.bins; ++b) {
      const double rate = data.rates[b];
      std::poisson_distribution<int64_t> poisson(rate);
      const int64_t shift = static_cast<int64_t>(
          std::round(spec.magnitude * std::sqrt(rate)));
      for (int64_t w = 0; w < windows; ++w) {
        int64_t c = rate > 0.0 ? poisson(rng.engine()) : 0;
        if (rng.Uniform01() < spec.anomaly_rate) {
          injected[b * windows + w] = true;
          c += shift;
        }
        // Entries are non-negative by construction.
        (void)counts.Set(b, w, c);
      }
    }
    data.iterations.push_back(std::move(counts));
    data.injected.push_back(std::move(injected));
  }
  return data;
}

std::vector<std::vector<Record>> MaterializeRecords(
    const CountMatrix& counts, std::span<const double> bin_edges, Rng& rng) {
  std::vector<std::vector<Record>> windows(counts.windows());
  for (int64_t w = 0; w < counts.windows(); ++w) {
    for (int64_t b = 0; b < counts.bins(); ++b) {
      const double lo = bin_edges[b];
      const double width = bin_edges[b + 1] - lo;
      for (int64_t i = 0; i < counts.at(b, w); ++i) {
        const double v = std::min(lo + width * rng.Uniform01(),
                                  std::nextafter(bin_edges[b + 1], lo));
        windows[w].push_back(Record{{v}});
      }
    }
  }
  return windows;
}

}  // namespace dpoad

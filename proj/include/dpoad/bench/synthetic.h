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

#ifndef DPOAD_BENCH_SYNTHETIC_H_
#define DPOAD_BENCH_SYNTHETIC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"

namespace dpoad {

// Poisson counts per bin and window, with injected anomalies.
struct SyntheticSpec {
  int bins = 11;
  // Poisson rate of each bin. Empty: evenly spaced over [rate_lo, rate_hi].
  std::vector<double> rates;
  double rate_lo = 4.0;
  double rate_hi = 6.0;
  // Probability that a (bin, window) cell is anomalous.
  double anomaly_rate = 0.05;
  // An anomalous cell gains round(magnitude * sqrt(rate)) records.
  double magnitude = 3.0;
  int64_t windows_per_iteration = 2000;
  int iterations = 6;
  // Attribute range split into `bins` equal-width bins.
  double range_lo = 0.0;
  double range_hi = 11.0;

  absl::Status Validate() const;
  std::vector<double> BinRates() const;
};

struct SyntheticData {
  std::vector<double> bin_edges;
  std::vector<double> rates;
  std::vector<CountMatrix> iterations;
  // Injected anomalies per iteration, bin-major like the detector scores.
  std::vector<std::vector<bool>> injected;
};

absl::StatusOr<SyntheticData> GenerateSynthetic(const SyntheticSpec& spec,
                                                uint64_t seed);

// One record per counted individual, placed uniformly inside its bin. Used
// to drive the record-level owner path from synthetic counts.
std::vector<std::vector<Record>> MaterializeRecords(
    const CountMatrix& counts, std::span<const double> bin_edges, Rng& rng);

}  // namespace dpoad

#endif  // DPOAD_BENCH_SYNTHETIC_H_

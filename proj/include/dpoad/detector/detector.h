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

#ifndef DPOAD_DETECTOR_DETECTOR_H_
#define DPOAD_DETECTOR_DETECTOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpoad/core/types.h"

namespace dpoad {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
absl::StatusOr<double> KsStatistic(std::span<const double> sample_a,
                                   std::span<const double> sample_b);

// Same statistic when `sorted_reference` is already sorted ascending and
// `test` is small: O(|test| log |reference|). Both must be non-empty.
double KsAgainstSorted(std::span<const double> sorted_reference,
                       std::span<const double> test);

// Asymptotic two-sample p-value of statistic d for sample sizes n and m.
double KsPValue(double d, int64_t n, int64_t m);

enum class ScoreTransform {
  kStatistic,       // score = D
  kOneMinusPValue,  // score = 1 - p(D)
};

struct ScoreOptions {
  // Consecutive test windows that form one scored unit.
  int64_t window_length = 1;
  ScoreTransform transform = ScoreTransform::kStatistic;
};

// Number of units per bin that ScoreWindows produces for `windows` columns.
int64_t UnitsPerBin(int64_t windows, int64_t window_length);

// One score per (bin, unit), bin-major. A unit is `window_length`
// consecutive test columns of one bin (the last unit may be shorter); it is
// scored by the KS statistic of its values against that bin's reference
// row. Fails if the matrices disagree on bins or any reference row is empty.
absl::StatusOr<std::vector<double>> ScoreWindows(
    const ObservationMatrix& reference, const ObservationMatrix& test,
    ScoreOptions options = {});
absl::StatusOr<std::vector<double>> ScoreWindows(const CountMatrix& reference,
                                                 const CountMatrix& test,
                                                 ScoreOptions options = {});

// label[i] = scores[i] >= threshold. Requires 0 < threshold < 1.
absl::StatusOr<std::vector<bool>> Classify(std::span<const double> scores,
                                           double threshold);

// Detector output for one iteration.
struct AnomalyReport {
  std::vector<double> scores;
  std::vector<bool> labels;
  double threshold = 0.9;
  int64_t iteration = 0;
};

absl::StatusOr<AnomalyReport> MakeReport(std::vector<double> scores,
                                         double threshold, int64_t iteration);

struct PrecisionRecall {
  double precision = 1.0;
  double recall = 1.0;
};

// precision = |D & T| / |D| (1 when D is empty),
// recall = |D & T| / |T| (1 when T is empty). Duplicates are ignored.
PrecisionRecall ComputePrecisionRecall(std::span<const int64_t> detected,
                                       std::span<const int64_t> ground_truth);
// Same over aligned label vectors; fails on a length mismatch.
absl::StatusOr<PrecisionRecall> ComputePrecisionRecall(
    const std::vector<bool>& detected, const std::vector<bool>& ground_truth);

// (2 + e^{-eps(r+1)} - e^{-eps} - 2 e^{-eps r}) /
// (2 + e^{-eps(r+1)} - e^{-eps r} - 2 e^{-eps}) with r = m / k.
absl::StatusOr<double> UtilityRatioBound(double epsilon, int64_t m, int64_t k);
// Same with r given directly (r >= 1).
absl::StatusOr<double> UtilityRatioBoundAt(double epsilon, double ratio);

enum class CombineRule { kMax, kMean };

// Element-wise combination of per-attribute score vectors of equal length.
absl::StatusOr<std::vector<double>> CombineScores(
    std::span<const std::vector<double>> per_attribute, CombineRule rule);

}  // namespace dpoad

#endif  // DPOAD_DETECTOR_DETECTOR_H_

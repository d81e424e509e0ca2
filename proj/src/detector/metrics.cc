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

#include <algorithm>
#include <cmath>
#include <iterator>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpoad/detector/detector.h"

namespace dpoad {

absl::StatusOr<std::vector<bool>> Classify(std::span<const double> scores,
                                           double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("threshold must lie in (0, 1); got ", threshold));
  }
  std::vector<bool> labels(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] >= threshold;
  return labels;
}

absl::StatusOr<AnomalyReport> MakeReport(std::vector<double> scores,
                                         double threshold, int64_t iteration) {
  auto labels = Classify(scores, threshold);
  if (!labels.ok()) return labels.status();
  AnomalyReport report;
  report.scores = std::move(scores);
  report.labels = *std::move(labels);
  report.threshold = threshold;
  report.iteration = iteration;
  return report;
}

PrecisionRecall ComputePrecisionRecall(std::span<const int64_t> detected,
                                       std::span<const int64_t> ground_truth) {
  std::vector<int64_t> d(detected.begin(), detected.end());
  std::vector<int64_t> t(ground_truth.begin(), ground_truth.end());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::vector<int64_t> both;
  std::set_intersection(d.begin(), d.end(), t.begin(), t.end(),
                        std::back_inserter(both));
  PrecisionRecall out;
  const double hits = static_cast<double>(both.size());
  if (!d.empty()) out.precision = hits / static_cast<double>(d.size());
  if (!t.empty()) out.recall = hits / static_cast<double>(t.size());
  return out;
}

absl::StatusOr<PrecisionRecall> ComputePrecisionRecall(
    const std::vector<bool>& detected, const std::vector<bool>& ground_truth) {
  if (detected.size() != ground_truth.size()) {
    return absl::InvalidArgumentError("label vectors differ in length");
  }
  int64_t n_detected = 0;
  int64_t n_truth = 0;
  int64_t hits = 0;
  for (size_t i = 0; i < detected.size(); ++i) {
    n_detected += detected[i];
    n_truth += ground_truth[i];
    hits += detected[i] && ground_truth[i];
  }
  PrecisionRecall out;
  if (n_detected > 0) out.precision = static_cast<double>(hits) / n_detected;
  if (n_truth > 0) out.recall = static_cast<double>(hits) / n_truth;
  return out;
}

absl::StatusOr<double> UtilityRatioBoundAt(double epsilon, double ratio) {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    return absl::InvalidArgumentError("m / k must be a finite value >= 1");
  }
  const double e1 = std::exp(-epsilon);
  const double er = std::exp(-epsilon * ratio);
  const double er1 = std::exp(-epsilon * (ratio + 1.0));
  return (2.0 + er1 - e1 - 2.0 * er) / (2.0 + er1 - er - 2.0 * e1);
}

absl::StatusOr<double> UtilityRatioBound(double epsilon, int64_t m,
                                         int64_t k) {
  if (k < 1 || k > m) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= k <= m; got k=", k, " m=", m));
  }
  if (m == k) {
    if (!(epsilon > 0.0)) {
      return absl::InvalidArgumentError("epsilon must be > 0");
    }
    return 1.0;
  }
  return UtilityRatioBoundAt(
      epsilon, static_cast<double>(m) / static_cast<double>(k));
}

absl::StatusOr<std::vector<double>> CombineScores(
    std::span<const std::vector<double>> per_attribute, CombineRule rule) {
  if (per_attribute.empty()) return std::vector<double>{};
  const size_t n = per_attribute.front().size();
  for (const auto& v : per_attribute) {
    if (v.size() != n) {
      return absl::InvalidArgumentError("attribute score vectors differ in "
                                        "length");
    }
  }
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    double acc = rule == CombineRule::kMax ? per_attribute.front()[i] : 0.0;
    for (const auto& v : per_attribute) {
      acc = rule == CombineRule::kMax ? std::max(acc, v[i]) : acc + v[i];
    }
    out[i] = rule == CombineRule::kMax
                 ? acc
                 : acc / static_cast<double>(per_attribute.size());
  }
  return out;
}

}  // namespace dpoad

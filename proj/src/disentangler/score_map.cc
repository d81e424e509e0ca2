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

#include "dpoad/disentangler/score_map.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpoad {

ScoreMap::ScoreMap(DiscretePdf pdf, ScoreKind kind, double floor,
                   std::vector<double> table)
    : pdf_(std::move(pdf)), kind_(kind), floor_(floor),
      table_(std::move(table)) {
  std::vector<int64_t> order(table_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int64_t>(i);
  std::stable_sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
    return table_[a] < table_[b];
  });
  for (int64_t c : order) {
    if (!sorted_scores_.empty() && sorted_scores_.back() == table_[c]) continue;
    sorted_scores_.push_back(table_[c]);
    lowest_count_.push_back(c);
  }
}

absl::StatusOr<ScoreMap> ScoreMap::Build(const DiscretePdf& pdf,
                                         ScoreKind kind, double n_effective) {
  if (!(n_effective > 0.0) || !std::isfinite(n_effective)) {
    return absl::InvalidArgumentError("n_effective must be positive");
  }
  const int64_t n = pdf.domain_size();
  const double floor = 1.0 / (10.0 * static_cast<double>(n) * n_effective);
  std::vector<double> table(n);
  double top = 0.0;
  for (int64_t c = 0; c < n; ++c) {
    table[c] = kind == ScoreKind::kSurprisal
                   ? -std::log(std::max(pdf[c], floor))
                   : pdf[c];
    top = std::max(top, table[c]);
  }
  // Surprisal of a flat table is identical everywhere (possibly 0).
  bool flat = true;
  for (int64_t c = 1; c < n; ++c) flat = flat && table[c] == table[0];
  for (double& s : table) s = (flat || !(top > 0.0)) ? 1.0 : s / top;
  return ScoreMap(pdf, kind, floor, std::move(table));
}

int64_t ScoreMap::NearestCount(double s) const {
  if (std::isnan(s)) return lowest_count_.front();
  const auto it =
      std::lower_bound(sorted_scores_.begin(), sorted_scores_.end(), s);
  if (it == sorted_scores_.begin()) return lowest_count_.front();
  if (it == sorted_scores_.end()) return lowest_count_.back();
  const size_t hi = static_cast<size_t>(it - sorted_scores_.begin());
  const size_t lo = hi - 1;
  const double d_lo = s - sorted_scores_[lo];
  const double d_hi = sorted_scores_[hi] - s;
  if (d_lo < d_hi) return lowest_count_[lo];
  if (d_hi < d_lo) return lowest_count_[hi];
  return std::min(lowest_count_[lo], lowest_count_[hi]);
}

std::vector<double> Disentangle(std::span<const int64_t> counts,
                                const ScoreMap& map, int64_t* clamped) {
  std::vector<double> out(counts.size());
  int64_t n_clamped = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    const int64_t c = std::clamp<int64_t>(counts[i], 0, map.domain_max());
    n_clamped += c != counts[i];
    out[i] = map.score(c);
  }
  if (clamped != nullptr) *clamped = n_clamped;
  return out;
}

absl::StatusOr<double> MapSensitivity(double delta_q, const ScoreMap& map) {
  if (!(delta_q >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitivity must be >= 0; got ", delta_q));
  }
  const int64_t n = map.domain_max() + 1;
  const int64_t reach = static_cast<int64_t>(
      std::min(std::floor(delta_q), static_cast<double>(n - 1)));
  const auto table = map.score_table();
  double best = 0.0;
  for (int64_t c = 0; c < n; ++c) {
    for (int64_t d = 1; d <= reach && c + d < n; ++d) {
      best = std::max(best, std::abs(table[c] - table[c + d]));
    }
  }
  return best;
}

std::vector<int64_t> Reconstruct(std::span<const double> noisy_scores,
                                 const ScoreMap& map) {
  std::vector<int64_t> out(noisy_scores.size());
  for (size_t i = 0; i < noisy_scores.size(); ++i) {
    out[i] = map.NearestCount(noisy_scores[i]);
  }
  return out;
}

CandidateDistribution ScoreDifferenceDistribution(const ScoreMap& map) {
  const auto table = map.score_table();
  const auto& pdf = map.pdf();
  const int64_t n = pdf.domain_size();
  CandidateDistribution out;
  for (int64_t a = 0; a < n; ++a) {
    if (pdf[a] == 0.0) continue;
    out.values.push_back(0.0);
    out.probs.push_back(pdf[a] * pdf[a]);
    for (int64_t b = a + 1; b < n; ++b) {
      if (pdf[b] == 0.0) continue;
      out.values.push_back(std::abs(table[a] - table[b]));
      out.probs.push_back(2.0 * pdf[a] * pdf[b]);
    }
  }
  return out;
}

absl::StatusOr<SensitivitySample> SampleScoreSensitivity(const ScoreMap& map,
                                                         int64_t m, int64_t k,
                                                         Rng& rng) {
  return SampleFromCandidateDistribution(ScoreDifferenceDistribution(map), m,
                                         k, rng);
}

}  // namespace dpoad

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

#ifndef DPOAD_DISENTANGLER_SCORE_MAP_H_
#define DPOAD_DISENTANGLER_SCORE_MAP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"
#include "dpoad/sampler/sensitivity_sampler.h"

namespace dpoad {

enum class ScoreKind {
  // -ln p(c), normalized by its maximum. Improbable counts score high.
  kSurprisal,
  // p(c) / max p. Kept for ablation; it is NOT monotone in improbability.
  kProbability,
};

// Count -> score table built from a learnt pmf.
class ScoreMap {
 public:
  // Surprisal uses -ln(max(p(c), floor)) with
  // floor = 1 / (10 (C_max + 1) n_effective), which keeps log(0) finite.
  // A flat table (uniform pmf, single-point domain) scores every count 1.
  static absl::StatusOr<ScoreMap> Build(const DiscretePdf& pdf,
                                        ScoreKind kind = ScoreKind::kSurprisal,
                                        double n_effective = 1.0);

  const DiscretePdf& pdf() const { return pdf_; }
  ScoreKind kind() const { return kind_; }
  double floor() const { return floor_; }
  int64_t domain_max() const { return pdf_.domain_max(); }
  std::span<const double> score_table() const { return table_; }
  double score(int64_t count) const { return table_[count]; }

  // Smallest count whose score is nearest to `s`; equal distances go to the
  // lower count. NaN maps to the count with the smallest score.
  int64_t NearestCount(double s) const;

 private:
  ScoreMap(DiscretePdf pdf, ScoreKind kind, double floor,
           std::vector<double> table);

  DiscretePdf pdf_;
  ScoreKind kind_;
  double floor_;
  std::vector<double> table_;
  // Distinct scores ascending, each with the lowest count that attains it.
  std::vector<double> sorted_scores_;
  std::vector<int64_t> lowest_count_;
};

// Elementwise score lookup. Counts outside [0, C_max] are clamped; the number
// of clamped entries is written to `clamped` when given.
std::vector<double> Disentangle(std::span<const int64_t> counts,
                                const ScoreMap& map,
                                int64_t* clamped = nullptr);

// Lipschitz image of a count-space sensitivity:
// max |score(c) - score(c')| over pairs with |c - c'| <= delta_q.
absl::StatusOr<double> MapSensitivity(double delta_q, const ScoreMap& map);

// Nearest-score pseudo-inverse, clamped into the domain by construction.
std::vector<int64_t> Reconstruct(std::span<const double> noisy_scores,
                                 const ScoreMap& map);

// Distribution of |score(c) - score(c')| for c, c' ~ map.pdf() i.i.d.
CandidateDistribution ScoreDifferenceDistribution(const ScoreMap& map);

// k-th of m score-space sensitivity candidates drawn from
// ScoreDifferenceDistribution.
absl::StatusOr<SensitivitySample> SampleScoreSensitivity(const ScoreMap& map,
                                                         int64_t m, int64_t k,
                                                         Rng& rng);

}  // namespace dpoad

#endif  // DPOAD_DISENTANGLER_SCORE_MAP_H_

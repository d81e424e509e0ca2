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

#ifndef DPOAD_SAMPLER_SENSITIVITY_SAMPLER_H_
#define DPOAD_SAMPLER_SENSITIVITY_SAMPLER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"

namespace dpoad {

// What a single sensitivity candidate is.
enum class CandidateKind {
  // |c - c'| with c, c' drawn independently from the pmf.
  kNeighborDifference,
  // c itself.
  kDirectValue,
};

// m sorted candidates and their k-th order statistic (1-indexed).
//
// Prediction-phase m runs into the millions, so the candidates are kept as
// distinct ascending values with multiplicities. Candidates() expands them.
struct SensitivitySample {
  std::vector<double> values;
  std::vector<int64_t> multiplicities;
  int64_t m = 0;
  int64_t k = 0;
  double chosen = 0.0;

  std::vector<double> Candidates() const;
  // Number of candidates strictly below / at most `x`.
  int64_t CountBelow(double x) const;
  int64_t CountAtMost(double x) const;
  // k'-th order statistic of the same pool, 1 <= k' <= m.
  double OrderStatistic(int64_t k_prime) const;
};

// A finite distribution over candidate values. Values need not be sorted or
// distinct; probabilities must be non-negative with positive total and are
// normalized internally.
struct CandidateDistribution {
  std::vector<double> values;
  std::vector<double> probs;
};

// Distribution of |c - c'| over {0..C_max} for c, c' ~ pdf i.i.d.
CandidateDistribution NeighborDifferenceDistribution(const DiscretePdf& pdf);

// Draws m candidates i.i.d. from `dist` (one multinomial draw, exact in
// distribution) and returns the k-th smallest.
absl::StatusOr<SensitivitySample> SampleFromCandidateDistribution(
    const CandidateDistribution& dist, int64_t m, int64_t k, Rng& rng);

// Sensitivity candidates drawn from a learnt count pmf.
absl::StatusOr<SensitivitySample> SampleSensitivity(
    const DiscretePdf& pdf, int64_t m, int64_t k, Rng& rng,
    CandidateKind kind = CandidateKind::kNeighborDifference);

// Same with the uniform pmf over {0..c_max}; the learning-phase sampler.
absl::StatusOr<SensitivitySample> SampleSensitivityUniform(
    int64_t c_max, int64_t m, int64_t k, Rng& rng,
    CandidateKind kind = CandidateKind::kNeighborDifference);

}  // namespace dpoad

#endif  // DPOAD_SAMPLER_SENSITIVITY_SAMPLER_H_

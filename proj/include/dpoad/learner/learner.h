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

#ifndef DPOAD_LEARNER_LEARNER_H_
#define DPOAD_LEARNER_LEARNER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpoad/core/types.h"

// Analyst-side estimation of the per-bin count distribution. Everything here
// consumes privatized values only; raw counts never reach this module except
// through ValueHistogram, which the owner runs before privatizing.

namespace dpoad {

// Rounds each noisy value to the nearest integer, clamps it into
// [0, c_max], and returns the normalized frequencies. Non-finite inputs are
// ignored. No usable input gives the uniform pmf.
DiscretePdf EstimatePdf(std::span<const double> noisy_counts, int64_t c_max);

// Owner side: hist[v] = number of windows whose count (clamped into
// [0, c_max]) equals v. Moving one record between windows' counts changes two
// cells by one each, hence L1 sensitivity kValueHistogramSensitivity.
std::vector<double> ValueHistogram(std::span<const int64_t> counts,
                                   int64_t c_max);
inline constexpr double kValueHistogramSensitivity = 2.0;

// Clips negative cells of a noisy value histogram and normalizes. All-zero
// after clipping gives the uniform pmf.
DiscretePdf EstimatePdfFromHistogram(std::span<const double> noisy_histogram);

// ceil(c ((N + ln(1/beta)) / alpha^2 + N ln(1/beta) / (epsilon alpha))).
absl::StatusOr<int64_t> RequiredSamples(int64_t domain_size, double alpha,
                                        double beta, double epsilon,
                                        double c_const);

// Down-weights anomalous observations: observation i adds weight
// 1 - scores[i] at its count. The normalized weighted frequencies are mixed
// with `base` as mix * empirical + (1 - mix) * base. Zero total weight
// returns `base`. Counts outside the domain are clamped into it.
absl::StatusOr<DiscretePdf> UpdatePdfWithScores(
    const DiscretePdf& base, std::span<const int64_t> observed_counts,
    std::span<const double> scores, double mix = 0.5);

// Which privatized release the per-bin pmfs are fitted from.
enum class LearningSource {
  // Noisy histograms of per-window count values.
  kValueHistogram,
  // The noisy counts themselves, rounded and clamped (EstimatePdf).
  kNoisyCounts,
};

// Analyst's learnt distributions, one per histogram bin.
class LearnerState {
 public:
  static absl::StatusOr<LearnerState> Create(int64_t bins, int64_t c_max,
                                             double alpha_target, double beta,
                                             LearningSource source);

  int64_t bins() const { return static_cast<int64_t>(pdfs_.size()); }
  int64_t c_max() const { return c_max_; }
  int64_t domain_size() const { return c_max_ + 1; }
  double alpha_target() const { return alpha_target_; }
  double beta() const { return beta_; }
  LearningSource source() const { return source_; }
  int64_t n_samples() const { return n_samples_; }

  const DiscretePdf& pdf(int64_t bin) const { return pdfs_[bin]; }
  const std::vector<DiscretePdf>& pdfs() const { return pdfs_; }
  std::span<const double> accumulated_noisy_counts(int64_t bin) const {
    return noisy_counts_[bin];
  }

  // Adds released values to the sample count n.
  void CountReleased(int64_t values) { n_samples_ += values; }

  // Accumulates one bin's privatized counts (kNoisyCounts source).
  absl::Status AddNoisyCounts(int64_t bin, std::span<const double> values);
  // Accumulates one bin's privatized value histogram (kValueHistogram).
  absl::Status AddNoisyHistogram(int64_t bin, std::span<const double> hist);

  // Re-estimates every bin from everything accumulated so far.
  void Refit();

  // Refit, then fold one round of scored pseudo-counts into bin `bin`.
  absl::Status ApplyScoreFeedback(int64_t bin,
                                  std::span<const int64_t> pseudo_counts,
                                  std::span<const double> scores, double mix);

  // Bin whose learnt pmf has the largest variance; its pmf gives the most
  // spread-out sensitivity candidates.
  int64_t WidestBin() const;

 private:
  LearnerState(int64_t bins, int64_t c_max, double alpha_target, double beta,
               LearningSource source);
  DiscretePdf Fit(int64_t bin) const;

  int64_t c_max_;
  double alpha_target_;
  double beta_;
  LearningSource source_;
  int64_t n_samples_ = 0;
  std::vector<std::vector<double>> noisy_counts_;
  std::vector<std::vector<double>> histograms_;
  std::vector<DiscretePdf> pdfs_;
};

// n_samples >= RequiredSamples(N, alpha_target, beta, epsilon, c_const).
absl::StatusOr<bool> PhaseSwitchReady(const LearnerState& state,
                                      double epsilon, double c_const);

}  // namespace dpoad

#endif  // DPOAD_LEARNER_LEARNER_H_

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

#include "dpoad/learner/learner.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpoad {

DiscretePdf EstimatePdf(std::span<const double> noisy_counts, int64_t c_max) {
  std::vector<double> freq(c_max + 1, 0.0);
  for (double v : noisy_counts) {
    if (!std::isfinite(v)) continue;
    const double r = std::clamp(std::round(v), 0.0, static_cast<double>(c_max));
    freq[static_cast<size_t>(r)] += 1.0;
  }
  // FromWeights only fails on negative or non-finite weights.
  return *DiscretePdf::FromWeights(std::move(freq));
}

std::vector<double> ValueHistogram(std::span<const int64_t> counts,
                                   int64_t c_max) {
  std::vector<double> hist(c_max + 1, 0.0);
  for (int64_t c : counts) hist[std::clamp<int64_t>(c, 0, c_max)] += 1.0;
  return hist;
}

DiscretePdf EstimatePdfFromHistogram(std::span<const double> noisy_histogram) {
  std::vector<double> w(noisy_histogram.size());
  for (size_t i = 0; i < w.size(); ++i) {
    const double v = noisy_histogram[i];
    w[i] = std::isfinite(v) ? std::max(v, 0.0) : 0.0;
  }
  return *DiscretePdf::FromWeights(std::move(w));
}

absl::StatusOr<int64_t> RequiredSamples(int64_t domain_size, double alpha,
                                        double beta, double epsilon,
                                        double c_const) {
  if (domain_size < 1) return absl::InvalidArgumentError("N must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("alpha and beta must lie in (0, 1)");
  }
  if (!(epsilon > 0.0) || !(c_const > 0.0)) {
    return absl::InvalidArgumentError("epsilon and c must be positive");
  }
  const double n = static_cast<double>(domain_size);
  const double log_inv_beta = std::log(1.0 / beta);
  const double value = c_const * ((n + log_inv_beta) / (alpha * alpha) +
                                  n * log_inv_beta / (epsilon * alpha));
  return static_cast<int64_t>(std::ceil(value));
}

absl::StatusOr<DiscretePdf> UpdatePdfWithScores(
    const DiscretePdf& base, std::span<const int64_t> observed_counts,
    std::span<const double> scores, double mix) {
  if (observed_counts.size() != scores.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("got ", observed_counts.size(), " counts but ",
                     scores.size(), " scores"));
  }
  if (!(mix >= 0.0 && mix <= 1.0)) {
    return absl::InvalidArgumentError("mix must lie in [0, 1]");
  }
  std::vector<double> weights(base.domain_size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!(scores[i] >= 0.0 && scores[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("score ", i, " is outside [0, 1]: ", scores[i]));
    }
    const int64_t c =
        std::clamp<int64_t>(observed_counts[i], 0, base.domain_max());
    weights[c] += 1.0 - scores[i];
    total += 1.0 - scores[i];
  }
  if (total <= 0.0) return base;
  for (int64_t c = 0; c < base.domain_size(); ++c) {
    weights[c] = mix * weights[c] / total + (1.0 - mix) * base[c];
  }
  return DiscretePdf::FromWeights(std::move(weights));
}

LearnerState::LearnerState(int64_t bins, int64_t c_max, double alpha_target,
                           double beta, LearningSource source)
    : c_max_(c_max),
      alpha_target_(alpha_target),
      beta_(beta),
      source_(source),
      noisy_counts_(bins),
      histograms_(bins, std::vector<double>(c_max + 1, 0.0)),
      pdfs_(bins, DiscretePdf::Uniform(c_max)) {}

absl::StatusOr<LearnerState> LearnerState::Create(int64_t bins, int64_t c_max,
                                                  double alpha_target,
                                                  double beta,
                                                  LearningSource source) {
  if (bins < 1) return absl::InvalidArgumentError("need at least one bin");
  if (c_max < 0) return absl::InvalidArgumentError("c_max must be >= 0");
  if (!(alpha_target > 0.0 && alpha_target < 1.0) ||
      !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("alpha and beta must lie in (0, 1)");
  }
  return LearnerState(bins, c_max, alpha_target, beta, source);
}

absl::Status LearnerState::AddNoisyCounts(int64_t bin,
                                          std::span<const double> values) {
  if (bin < 0 || bin >= bins()) {
    return absl::OutOfRangeError(absl::StrCat("no bin ", bin));
  }
  auto& acc = noisy_counts_[bin];
  acc.insert(acc.end(), values.begin(), values.end());
  return absl::OkStatus();
}

absl::Status LearnerState::AddNoisyHistogram(int64_t bin,
                                             std::span<const double> hist) {
  if (bin < 0 || bin >= bins()) {
    return absl::OutOfRangeError(absl::StrCat("no bin ", bin));
  }
  if (static_cast<int64_t>(hist.size()) != domain_size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("histogram has ", hist.size(), " cells, domain has ",
                     domain_size()));
  }
  auto& acc = histograms_[bin];
  for (size_t i = 0; i < hist.size(); ++i) acc[i] += hist[i];
  return absl::OkStatus();
}

DiscretePdf LearnerState::Fit(int64_t bin) const {
  if (source_ == LearningSource::kNoisyCounts) {
    return EstimatePdf(noisy_counts_[bin], c_max_);
  }
  return EstimatePdfFromHistogram(histograms_[bin]);
}

void LearnerState::Refit() {
  for (int64_t b = 0; b < bins(); ++b) pdfs_[b] = Fit(b);
}

absl::Status LearnerState::ApplyScoreFeedback(
    int64_t bin, std::span<const int64_t> pseudo_counts,
    std::span<const double> scores, double mix) {
  if (bin < 0 || bin >= bins()) {
    return absl::OutOfRangeError(absl::StrCat("no bin ", bin));
  }
  auto updated = UpdatePdfWithScores(Fit(bin), pseudo_counts, scores, mix);
  if (!updated.ok()) return updated.status();
  pdfs_[bin] = *std::move(updated);
  return absl::OkStatus();
}

int64_t LearnerState::WidestBin() const {
  int64_t best = 0;
  double best_var = -1.0;
  for (int64_t b = 0; b < bins(); ++b) {
    const double v = pdfs_[b].Variance();
    if (v > best_var) {
      best_var = v;
      best = b;
    }
  }
  return best;
}

absl::StatusOr<bool> PhaseSwitchReady(const LearnerState& state,
                                      double epsilon, double c_const) {
  auto required = RequiredSamples(state.domain_size(), state.alpha_target(),
                                  state.beta(), epsilon, c_const);
  if (!required.ok()) return required.status();
  return state.n_samples() >= *required;
}

}  // namespace dpoad

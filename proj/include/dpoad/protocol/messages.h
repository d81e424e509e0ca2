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

#ifndef DPOAD_PROTOCOL_MESSAGES_H_
#define DPOAD_PROTOCOL_MESSAGES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpoad/core/types.h"
#include "dpoad/detector/detector.h"
#include "dpoad/mechanisms/laplace.h"

namespace dpoad {

enum class Mechanism { kLaplace, kPainFree, kDpoad };

absl::string_view MechanismName(Mechanism mechanism);
absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name);

// Stable identifier of a bin-edge vector (FNV-1a over the IEEE bits).
uint64_t BinEdgesId(std::span<const double> edges);

// Everything in a release except the privatized data.
struct ReleaseHeader {
  int64_t iteration = 0;
  Phase phase = Phase::kLearning;
  Mechanism mechanism = Mechanism::kDpoad;
  double epsilon_used = 0.0;
  uint64_t bin_edges_id = 0;
  int64_t bins = 0;
  int64_t windows = 0;
  // Sensitivity behind the payload noise: counts in the learning phase and
  // for the baselines, scores in the prediction phase (largest over bins).
  double sensitivity_used = 0.0;
  int64_t m = 0;
  int64_t k = 0;

  bool operator==(const ReleaseHeader&) const = default;
};

// What the data owner sends. Every number in it comes out of the Laplace
// mechanism: the payload is one Privatized row per bin (noisy counts in the
// learning phase, noisy scores in the prediction phase) and the optional
// value histograms are Privatized too. There is no way to put raw counts in.
class OwnerRelease {
 public:
  static absl::StatusOr<OwnerRelease> Create(
      ReleaseHeader header, std::vector<Privatized> payload,
      std::vector<Privatized> value_histograms = {});

  const ReleaseHeader& header() const { return header_; }
  int64_t iteration() const { return header_.iteration; }
  Phase phase() const { return header_.phase; }

  std::span<const double> payload(int64_t bin) const {
    return payload_[bin].values();
  }
  double payload_scale(int64_t bin) const {
    return payload_[bin].noise_scale();
  }
  bool has_value_histograms() const { return !histograms_.empty(); }
  std::span<const double> value_histogram(int64_t bin) const {
    return histograms_[bin].values();
  }
  double histogram_scale(int64_t bin) const {
    return histograms_[bin].noise_scale();
  }
  int64_t histogram_count() const {
    return static_cast<int64_t>(histograms_.size());
  }

 private:
  friend absl::StatusOr<OwnerRelease> DecodeOwnerRelease(absl::string_view);
  OwnerRelease(ReleaseHeader header, std::vector<Privatized> payload,
               std::vector<Privatized> histograms)
      : header_(header), payload_(std::move(payload)),
        histograms_(std::move(histograms)) {}

  ReleaseHeader header_;
  std::vector<Privatized> payload_;
  std::vector<Privatized> histograms_;
};

// What the analyst sends back after scoring a release.
struct MsspReport {
  int64_t iteration = 0;
  Phase release_phase = Phase::kLearning;
  AnomalyReport anomalies;
  std::vector<DiscretePdf> updated_pdfs;  // one per bin
  // Sensitivity for the owner's next release. In the prediction phase it is
  // in score space; bin_sensitivities holds the per-bin values actually
  // applied (all equal to sampled_sensitivity in conservative mode).
  double sampled_sensitivity = 0.0;
  std::vector<double> bin_sensitivities;
  int64_t m = 0;
  int64_t k = 0;
  double rho = 0.0;
  bool full_protection = false;
  Phase phase_recommendation = Phase::kLearning;
};

}  // namespace dpoad

#endif  // DPOAD_PROTOCOL_MESSAGES_H_

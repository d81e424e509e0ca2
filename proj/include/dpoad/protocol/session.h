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

#ifndef DPOAD_PROTOCOL_SESSION_H_
#define DPOAD_PROTOCOL_SESSION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"
#include "dpoad/detector/detector.h"
#include "dpoad/disentangler/score_map.h"
#include "dpoad/learner/learner.h"
#include "dpoad/protocol/messages.h"
#include "dpoad/sampler/calibration.h"
#include "dpoad/sampler/sensitivity_sampler.h"

namespace dpoad {

// How the analyst turns a sampled distribution into a score-space
// sensitivity for prediction-phase releases.
enum class ScoreSensitivity {
  // k-th of m draws of |s(c) - s(c')| with c, c' from the learnt pmf.
  kSampled,
  // Count-space k-th of m draws of |c - c'|, pushed through MapSensitivity.
  kLipschitzImage,
};

enum class SensitivityScope {
  // One sensitivity for every bin: the largest over bins.
  kConservative,
  // Each bin uses its own.
  kPerBin,
};

struct SessionConfig {
  Mechanism mechanism = Mechanism::kDpoad;
  double epsilon = 1.0;  // per release
  double gamma = 0.2;
  double alpha = 0.1;
  double beta = 0.1;
  double c_const = 1.0;
  int64_t c_max = 20;
  std::vector<double> bin_edges;
  int attribute_index = 0;
  double threshold = 0.9;

  // Share of each DPOAD release's epsilon spent on the value histograms.
  double histogram_share = 0.1;
  LearningSource learning_source = LearningSource::kValueHistogram;
  // Weight of the score-weighted pseudo-count frequencies against the
  // histogram estimate when the analyst updates its pmfs.
  double feedback_mix = 0.1;

  ScoreKind score_kind = ScoreKind::kSurprisal;
  double n_effective = 1.0;
  ScoreSensitivity score_sensitivity = ScoreSensitivity::kSampled;
  SensitivityScope sensitivity_scope = SensitivityScope::kConservative;
  CandidateKind candidate_kind = CandidateKind::kNeighborDifference;
  PredictionOptions prediction;

  ScoreOptions score_options;
  // Divide each count release by its noise scale before pooling it into the
  // detector reference, so releases of different scale stay comparable.
  bool pool_by_noise_scale = true;

  absl::Status Validate() const;
  int64_t bins() const {
    return bin_edges.empty() ? 0 : static_cast<int64_t>(bin_edges.size()) - 1;
  }
};

// Non-private metadata the owner shares before the first release so the
// analyst can fix bin edges.
struct SessionSetup {
  double epsilon = 1.0;
  int64_t c_max = 20;
  double range_lo = 0.0;
  double range_hi = 1.0;
  int bins = 10;
};

// Analyst's equal-width bin edges for a setup message.
absl::StatusOr<std::vector<double>> BinEdgesForSetup(const SessionSetup& setup);

class OwnerState {
 public:
  static absl::StatusOr<OwnerState> Create(SessionConfig config);

  const SessionConfig& config() const { return config_; }
  Phase phase() const { return phase_; }
  int64_t iteration() const { return iteration_; }
  const SamplerParams& learning_params() const { return learning_params_; }

  // Consumes the analyst's report for the latest release. The phase only
  // ever moves from learning to prediction.
  absl::Status ApplyReport(const MsspReport& report);

 private:
  friend absl::StatusOr<OwnerRelease> OwnerStep(OwnerState&,
                                                const CountMatrix&,
                                                const Rng&);
  explicit OwnerState(SessionConfig config) : config_(std::move(config)) {}

  SessionConfig config_;
  SamplerParams learning_params_;
  Phase phase_ = Phase::kLearning;
  int64_t iteration_ = 0;
  bool have_report_ = false;
  std::vector<DiscretePdf> pdfs_;
  std::vector<double> bin_sensitivities_;
  int64_t report_m_ = 0;
  int64_t report_k_ = 0;
};

// Privatizes one iteration of data. `counts` is bins x windows; counts are
// clamped into [0, C_max]. Randomness comes from streams forked off `rng`
// by iteration, so the call is a pure function of its inputs.
absl::StatusOr<OwnerRelease> OwnerStep(OwnerState& state,
                                       const CountMatrix& counts,
                                       const Rng& rng);
// Same from raw records: one histogram per time window.
absl::StatusOr<OwnerRelease> OwnerStep(
    OwnerState& state, std::span<const std::vector<Record>> windows,
    const Rng& rng);

class MsspState {
 public:
  static absl::StatusOr<MsspState> Create(SessionConfig config);

  const SessionConfig& config() const { return config_; }
  Phase phase() const { return phase_; }
  int64_t iteration() const { return iteration_; }
  int64_t cumulative_n() const { return learner_.n_samples(); }
  const LearnerState& learner() const { return learner_; }

 private:
  friend absl::StatusOr<MsspReport> MsspStep(MsspState&, const OwnerRelease&,
                                             const Rng&);
  MsspState(SessionConfig config, LearnerState learner)
      : config_(std::move(config)), learner_(std::move(learner)) {}

  SessionConfig config_;
  LearnerState learner_;
  Phase phase_ = Phase::kLearning;
  int64_t iteration_ = 0;
  // Score maps the owner used for the current prediction release.
  std::vector<ScoreMap> maps_;
  // Detector references per bin: count releases and prediction-phase
  // pseudo-counts are pooled separately.
  std::vector<std::vector<double>> count_reference_;
  std::vector<std::vector<double>> pseudo_reference_;
};

// Scores a release, updates the learnt distributions, and calibrates the
// owner's next release.
absl::StatusOr<MsspReport> MsspStep(MsspState& state,
                                    const OwnerRelease& release,
                                    const Rng& rng);

struct IterationTrace {
  OwnerRelease release;
  MsspReport report;
  // Wall time of the owner and analyst steps. Not part of the encoded trace.
  double runtime_ms = 0.0;
};

struct SessionTrace {
  std::vector<IterationTrace> iterations;
  // Iteration whose report first recommended the prediction phase; 0 if none.
  int64_t phase_switch_iteration = 0;
};

absl::StatusOr<SessionTrace> RunSession(std::span<const CountMatrix> data,
                                        const SessionConfig& config,
                                        uint64_t seed);
absl::StatusOr<SessionTrace> RunSession(
    std::span<const std::vector<std::vector<Record>>> data,
    const SessionConfig& config, uint64_t seed);

}  // namespace dpoad

#endif  // DPOAD_PROTOCOL_SESSION_H_

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

#include "dpoad/protocol/session.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dpoad/core/histogram.h"

namespace dpoad {
namespace {

// Stream ids for Rng::Fork. The payload stream does not depend on the
// mechanism, so mechanisms compared on one seed see the same unit noise.
constexpr uint64_t kPayloadStream = 1'000'000;
constexpr uint64_t kOwnerSamplerStream = 2'000'000;
constexpr uint64_t kHistogramStream = 3'000'000;
constexpr uint64_t kMsspSamplerStream = 4'000'000;

bool UsesValueHistograms(const SessionConfig& config) {
  return config.mechanism == Mechanism::kDpoad &&
         config.learning_source == LearningSource::kValueHistogram;
}

absl::Status WithIteration(const absl::Status& status, int64_t iteration) {
  return absl::Status(status.code(), absl::StrCat("iteration ", iteration,
                                                  ": ", status.message()));
}

absl::StatusOr<std::vector<ScoreMap>> BuildMaps(
    const std::vector<DiscretePdf>& pdfs, const SessionConfig& config) {
  std::vector<ScoreMap> maps;
  maps.reserve(pdfs.size());
  for (const auto& pdf : pdfs) {
    auto map = ScoreMap::Build(pdf, config.score_kind, config.n_effective);
    if (!map.ok()) return map.status();
    maps.push_back(*std::move(map));
  }
  return maps;
}

absl::StatusOr<CountMatrix> CountsFromRecords(
    std::span<const std::vector<Record>> windows, const SessionConfig& config) {
  std::vector<Histogram> hists;
  hists.reserve(windows.size());
  for (size_t w = 0; w < windows.size(); ++w) {
    auto h = BuildHistogram(windows[w], config.bin_edges,
                            config.attribute_index, static_cast<int64_t>(w));
    if (!h.ok()) return h.status();
    hists.push_back(*std::move(h));
  }
  if (hists.empty()) return CountMatrix::Zeros(config.bins(), 0);
  return StackHistograms(hists);
}

}  // namespace

absl::Status SessionConfig::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("alpha and beta must lie in (0, 1)");
  }
  if (!(c_const > 0.0)) return absl::InvalidArgumentError("c must be > 0");
  if (c_max < 0) return absl::InvalidArgumentError("c_max must be >= 0");
  if (auto s = ValidateBinEdges(bin_edges); !s.ok()) return s;
  if (attribute_index < 0) {
    return absl::InvalidArgumentError("attribute index must be >= 0");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    return absl::InvalidArgumentError("threshold must lie in (0, 1)");
  }
  if (UsesValueHistograms(*this) &&
      !(histogram_share > 0.0 && histogram_share < 1.0)) {
    return absl::InvalidArgumentError("histogram share must lie in (0, 1)");
  }
  if (!(feedback_mix >= 0.0 && feedback_mix <= 1.0)) {
    return absl::InvalidArgumentError("feedback mix must lie in [0, 1]");
  }
  if (!(n_effective > 0.0)) {
    return absl::InvalidArgumentError("n_effective must be positive");
  }
  if (score_options.window_length < 1) {
    return absl::InvalidArgumentError("window length must be >= 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> BinEdgesForSetup(
    const SessionSetup& setup) {
  return EqualWidthEdges(setup.range_lo, setup.range_hi, setup.bins);
}

absl::StatusOr<OwnerState> OwnerState::Create(SessionConfig config) {
  if (auto s = config.Validate(); !s.ok()) return s;
  auto params = LearningParams(config.gamma);
  if (!params.ok()) return params.status();
  OwnerState state(std::move(config));
  state.learning_params_ = *params;
  return state;
}

absl::Status OwnerState::ApplyReport(const MsspReport& report) {
  if (report.iteration != iteration_) {
    return absl::FailedPreconditionError(
        absl::StrCat("report for iteration ", report.iteration,
                     " but the owner is at ", iteration_));
  }
  if (phase_ == Phase::kPrediction &&
      report.phase_recommendation == Phase::kLearning) {
    return absl::FailedPreconditionError(
        "phase cannot move back to learning");
  }
  have_report_ = true;
  phase_ = report.phase_recommendation;
  pdfs_ = report.updated_pdfs;
  bin_sensitivities_ = report.bin_sensitivities;
  report_m_ = report.m;
  report_k_ = report.k;
  return absl::OkStatus();
}

absl::StatusOr<OwnerRelease> OwnerStep(OwnerState& state,
                                       const CountMatrix& counts,
                                       const Rng& rng) {
  const SessionConfig& cfg = state.config_;
  const int64_t bins = cfg.bins();
  if (counts.bins() != bins) {
    return absl::InvalidArgumentError(
        absl::StrCat("data has ", counts.bins(), " bins, session has ", bins));
  }
  const int64_t it = state.iteration_ + 1;
  Rng noise = rng.Fork(kPayloadStream + it);
  Rng sampler = rng.Fork(kOwnerSamplerStream + it);
  Rng hist_noise = rng.Fork(kHistogramStream + it);

  std::vector<std::vector<int64_t>> rows(bins);
  for (int64_t b = 0; b < bins; ++b) {
    const auto row = counts.bin(b);
    rows[b].resize(row.size());
    for (size_t w = 0; w < row.size(); ++w) {
      rows[b][w] = std::clamp<int64_t>(row[w], 0, cfg.c_max);
    }
  }

  ReleaseHeader header;
  header.iteration = it;
  header.mechanism = cfg.mechanism;
  header.epsilon_used = cfg.epsilon;
  header.bin_edges_id = BinEdgesId(cfg.bin_edges);
  header.bins = bins;
  header.windows = counts.windows();

  const bool histograms = UsesValueHistograms(cfg);
  const double eps_payload =
      histograms ? cfg.epsilon * (1.0 - cfg.histogram_share) : cfg.epsilon;
  const bool predict =
      cfg.mechanism == Mechanism::kDpoad && state.phase_ == Phase::kPrediction;
  header.phase = predict ? Phase::kPrediction : Phase::kLearning;

  std::vector<Privatized> payload;
  payload.reserve(bins);
  if (!predict) {
    double delta = 0.0;
    if (cfg.mechanism == Mechanism::kLaplace) {
      delta = GlobalSensitivityCountQuery(cfg.c_max);
    } else {
      const auto& lp = state.learning_params_;
      auto sample = SampleSensitivityUniform(cfg.c_max, lp.m, lp.k, sampler,
                                             cfg.candidate_kind);
      if (!sample.ok()) return sample.status();
      delta = sample->chosen;
      header.m = lp.m;
      header.k = lp.k;
    }
    header.sensitivity_used = delta;
    for (int64_t b = 0; b < bins; ++b) {
      std::vector<double> values(rows[b].begin(), rows[b].end());
      auto p = Privatize(values, delta, eps_payload, noise);
      if (!p.ok()) return p.status();
      payload.push_back(*std::move(p));
    }
  } else {
    if (!state.have_report_ ||
        static_cast<int64_t>(state.pdfs_.size()) != bins ||
        static_cast<int64_t>(state.bin_sensitivities_.size()) != bins) {
      return absl::FailedPreconditionError(
          "prediction release needs a report with per-bin pdfs");
    }
    auto maps = BuildMaps(state.pdfs_, cfg);
    if (!maps.ok()) return maps.status();
    header.m = state.report_m_;
    header.k = state.report_k_;
    for (int64_t b = 0; b < bins; ++b) {
      const std::vector<double> scores = Disentangle(rows[b], (*maps)[b]);
      const double delta = state.bin_sensitivities_[b];
      header.sensitivity_used = std::max(header.sensitivity_used, delta);
      auto p = Privatize(scores, delta, eps_payload, noise);
      if (!p.ok()) return p.status();
      payload.push_back(*std::move(p));
    }
  }

  std::vector<Privatized> value_hists;
  if (histograms) {
    value_hists.reserve(bins);
    for (int64_t b = 0; b < bins; ++b) {
      auto p = Privatize(ValueHistogram(rows[b], cfg.c_max),
                         kValueHistogramSensitivity,
                         cfg.epsilon * cfg.histogram_share, hist_noise);
      if (!p.ok()) return p.status();
      value_hists.push_back(*std::move(p));
    }
  }

  auto release =
      OwnerRelease::Create(header, std::move(payload), std::move(value_hists));
  if (!release.ok()) return release.status();
  state.iteration_ = it;
  return release;
}

absl::StatusOr<OwnerRelease> OwnerStep(
    OwnerState& state, std::span<const std::vector<Record>> windows,
    const Rng& rng) {
  auto counts = CountsFromRecords(windows, state.config());
  if (!counts.ok()) return counts.status();
  return OwnerStep(state, *counts, rng);
}

absl::StatusOr<MsspState> MsspState::Create(SessionConfig config) {
  if (auto s = config.Validate(); !s.ok()) return s;
  auto learner =
      LearnerState::Create(config.bins(), config.c_max, config.alpha,
                           config.beta, config.learning_source);
  if (!learner.ok()) return learner.status();
  const int64_t bins = config.bins();
  MsspState state(std::move(config), *std::move(learner));
  state.count_reference_.resize(bins);
  state.pseudo_reference_.resize(bins);
  return state;
}

absl::StatusOr<MsspReport> MsspStep(MsspState& state,
                                    const OwnerRelease& release,
                                    const Rng& rng) {
  const SessionConfig& cfg = state.config_;
  const ReleaseHeader& h = release.header();
  const int64_t it = state.iteration_ + 1;
  if (h.iteration != it) {
    return absl::FailedPreconditionError(
        absl::StrCat("expected release ", it, ", got ", h.iteration));
  }
  if (h.bins != cfg.bins() || h.bin_edges_id != BinEdgesId(cfg.bin_edges)) {
    return absl::InvalidArgumentError("release uses different bins");
  }
  if (h.mechanism != cfg.mechanism) {
    return absl::InvalidArgumentError("release comes from another mechanism");
  }
  if (h.phase == Phase::kPrediction && state.phase_ != Phase::kPrediction) {
    return absl::FailedPreconditionError(
        "prediction release before the analyst recommended it");
  }
  if (h.phase == Phase::kLearning && state.phase_ == Phase::kPrediction) {
    return absl::FailedPreconditionError("phase moved back to learning");
  }
  if (release.has_value_histograms() &&
      release.histogram_count() != cfg.bins()) {
    return absl::InvalidArgumentError("value histogram count != bins");
  }

  const int64_t bins = h.bins;
  const int64_t windows = h.windows;
  LearnerState& learner = state.learner_;
  learner.CountReleased(bins * windows);
  if (release.has_value_histograms()) {
    for (int64_t b = 0; b < bins; ++b) {
      if (auto s = learner.AddNoisyHistogram(b, release.value_histogram(b));
          !s.ok()) {
        return s;
      }
    }
  }

  // Observations the detector scores, and the pooled reference they are
  // compared with.
  const bool predict = h.phase == Phase::kPrediction;
  auto& pools = predict ? state.pseudo_reference_ : state.count_reference_;
  ObservationMatrix test(bins, windows);
  std::vector<std::vector<int64_t>> pseudo(predict ? bins : 0);
  for (int64_t b = 0; b < bins; ++b) {
    const auto values = release.payload(b);
    auto row = test.row(b);
    if (predict) {
      pseudo[b] = Reconstruct(values, state.maps_[b]);
      for (int64_t w = 0; w < windows; ++w) {
        row[w] = static_cast<double>(pseudo[b][w]);
      }
    } else {
      if (cfg.mechanism == Mechanism::kDpoad &&
          cfg.learning_source == LearningSource::kNoisyCounts) {
        if (auto s = learner.AddNoisyCounts(b, values); !s.ok()) return s;
      }
      const double scale = release.payload_scale(b);
      const double div =
          cfg.pool_by_noise_scale && scale > 0.0 ? scale : 1.0;
      for (int64_t w = 0; w < windows; ++w) row[w] = values[w] / div;
    }
    pools[b].insert(pools[b].end(), row.begin(), row.end());
  }
  const int64_t pooled = static_cast<int64_t>(pools.front().size());
  ObservationMatrix reference(bins, pooled);
  for (int64_t b = 0; b < bins; ++b) {
    std::copy(pools[b].begin(), pools[b].end(), reference.row(b).begin());
  }
  auto scores = ScoreWindows(reference, test, cfg.score_options);
  if (!scores.ok()) return scores.status();

  MsspReport report;
  report.iteration = it;
  report.release_phase = h.phase;
  auto anomalies = MakeReport(*scores, cfg.threshold, it);
  if (!anomalies.ok()) return anomalies.status();
  report.anomalies = *std::move(anomalies);
  state.iteration_ = it;

  if (cfg.mechanism != Mechanism::kDpoad) {
    report.updated_pdfs = learner.pdfs();
    report.phase_recommendation = Phase::kLearning;
    return report;
  }

  learner.Refit();
  if (predict && cfg.feedback_mix > 0.0) {
    const int64_t units =
        UnitsPerBin(windows, cfg.score_options.window_length);
    std::vector<double> window_scores(windows);
    for (int64_t b = 0; b < bins; ++b) {
      for (int64_t w = 0; w < windows; ++w) {
        window_scores[w] =
            (*scores)[b * units + w / cfg.score_options.window_length];
      }
      if (auto s = learner.ApplyScoreFeedback(b, pseudo[b], window_scores,
                                              cfg.feedback_mix);
          !s.ok()) {
        return s;
      }
    }
  }
  report.updated_pdfs = learner.pdfs();

  bool ready = state.phase_ == Phase::kPrediction;
  if (!ready) {
    auto r = PhaseSwitchReady(learner, cfg.epsilon, cfg.c_const);
    if (!r.ok()) return r.status();
    ready = *r;
  }
  if (!ready) {
    report.phase_recommendation = Phase::kLearning;
    return report;
  }

  auto params = PredictionParams(cfg.gamma, learner.n_samples(), cfg.epsilon,
                                 learner.domain_size(), cfg.c_const,
                                 cfg.prediction);
  if (!params.ok()) return params.status();
  auto maps = BuildMaps(report.updated_pdfs, cfg);
  if (!maps.ok()) return maps.status();
  Rng sampler = rng.Fork(kMsspSamplerStream + it);

  std::vector<double> sens(bins, 0.0);
  if (cfg.score_sensitivity == ScoreSensitivity::kSampled) {
    for (int64_t b = 0; b < bins; ++b) {
      auto s = SampleScoreSensitivity((*maps)[b], params->m, params->k,
                                      sampler);
      if (!s.ok()) return s.status();
      sens[b] = s->chosen;
    }
  } else {
    // Count-space draws mapped into score space. The conservative scope
    // draws once, from the bin with the widest learnt spread.
    const bool per_bin = cfg.sensitivity_scope == SensitivityScope::kPerBin;
    double count_delta = 0.0;
    for (int64_t b = 0; b < bins; ++b) {
      if (per_bin || b == 0) {
        auto s = SampleSensitivity(
            learner.pdf(per_bin ? b : learner.WidestBin()), params->m,
            params->k, sampler, cfg.candidate_kind);
        if (!s.ok()) return s.status();
        count_delta = s->chosen;
      }
      auto mapped = MapSensitivity(count_delta, (*maps)[b]);
      if (!mapped.ok()) return mapped.status();
      sens[b] = *mapped;
    }
  }
  const double largest = *std::max_element(sens.begin(), sens.end());
  if (cfg.sensitivity_scope == SensitivityScope::kConservative) {
    std::fill(sens.begin(), sens.end(), largest);
  }
  report.sampled_sensitivity = largest;
  report.bin_sensitivities = std::move(sens);
  report.m = params->m;
  report.k = params->k;
  report.rho = params->rho;
  report.full_protection = params->full_protection;
  report.phase_recommendation = Phase::kPrediction;
  state.phase_ = Phase::kPrediction;
  state.maps_ = *std::move(maps);
  return report;
}

absl::StatusOr<SessionTrace> RunSession(std::span<const CountMatrix> data,
                                        const SessionConfig& config,
                                        uint64_t seed) {
  if (data.empty()) {
    return absl::InvalidArgumentError("session needs at least one window");
  }
  auto owner = OwnerState::Create(config);
  if (!owner.ok()) return owner.status();
  auto mssp = MsspState::Create(config);
  if (!mssp.ok()) return mssp.status();
  const Rng root(seed);
  SessionTrace trace;
  for (size_t i = 0; i < data.size(); ++i) {
    const int64_t it = static_cast<int64_t>(i) + 1;
    const auto start = std::chrono::steady_clock::now();
    auto release = OwnerStep(*owner, data[i], root);
    if (!release.ok()) return WithIteration(release.status(), it);
    auto report = MsspStep(*mssp, *release, root);
    if (!report.ok()) return WithIteration(report.status(), it);
    if (auto s = owner->ApplyReport(*report); !s.ok()) {
      return WithIteration(s, it);
    }
    if (trace.phase_switch_iteration == 0 &&
        report->phase_recommendation == Phase::kPrediction) {
      trace.phase_switch_iteration = it;
    }
    const std::chrono::duration<double, std::milli> elapsed =
        std::chrono::steady_clock::now() - start;
    trace.iterations.push_back(IterationTrace{
        *std::move(release), *std::move(report), elapsed.count()});
  }
  return trace;
}

absl::StatusOr<SessionTrace> RunSession(
    std::span<const std::vector<std::vector<Record>>> data,
    const SessionConfig& config, uint64_t seed) {
  if (auto s = config.Validate(); !s.ok()) return s;
  std::vector<CountMatrix> counts;
  counts.reserve(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    auto c = CountsFromRecords(data[i], config);
    if (!c.ok()) return WithIteration(c.status(), static_cast<int64_t>(i) + 1);
    counts.push_back(*std::move(c));
  }
  return RunSession(counts, config, seed);
}

}  // namespace dpoad

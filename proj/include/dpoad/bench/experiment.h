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

#ifndef DPOAD_BENCH_EXPERIMENT_H_
#define DPOAD_BENCH_EXPERIMENT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpoad/bench/csv.h"
#include "dpoad/bench/synthetic.h"
#include "dpoad/core/types.h"
#include "dpoad/detector/detector.h"
#include "dpoad/protocol/messages.h"
#include "dpoad/protocol/session.h"

namespace dpoad {

struct ExperimentConfig {
  std::vector<Mechanism> mechanisms = {Mechanism::kLaplace,
                                       Mechanism::kPainFree,
                                       Mechanism::kDpoad};
  std::vector<double> epsilons = {1.0};
  std::vector<double> gammas = {0.2};
  std::vector<double> thresholds = {0.9};
  int iterations = 6;
  int seeds = 20;
  uint64_t base_seed = 1;

  // CSV dataset; empty selects the synthetic generator.
  std::string dataset;
  CsvSchema csv;
  // Records added per iteration when reading a dataset.
  int64_t records_per_iteration = 1000;
  SyntheticSpec synthetic;

  // Histogram bins and count bound. For synthetic data, bins overrides
  // synthetic.bins.
  int bins = 11;
  int64_t c_max = 20;
  // Remaining session knobs. Mechanism, epsilon, gamma, threshold, c_max
  // and bin edges are filled in per trial.
  SessionConfig session;
  // Worker threads; 0 uses the hardware concurrency.
  int threads = 0;

  absl::Status Validate() const;
};

// One row per (mechanism, epsilon, gamma, threshold, iteration, seed).
struct ResultRow {
  Mechanism mechanism = Mechanism::kDpoad;
  double epsilon = 0.0;
  double gamma = 0.0;
  double threshold = 0.0;
  int64_t iteration = 0;
  int64_t seed = 0;
  double precision = 0.0;
  double recall = 0.0;
  double runtime_ms = 0.0;
  double sensitivity_used = 0.0;
  int64_t k = 0;
  int64_t m = 0;
  int64_t phase_switch_iter = 0;

  bool operator==(const ResultRow&) const = default;
};

// Noise-free detector scores per iteration, bin-major: each count is scored
// against every count of its bin up to and including its own iteration.
// Counts are clamped into [0, c_max] first, as the owner does.
absl::StatusOr<std::vector<std::vector<double>>> GroundTruthScores(
    std::span<const CountMatrix> iterations, int64_t c_max,
    const ScoreOptions& options = {});

// Per-iteration count matrices of one trial plus the bin edges used.
struct TrialData {
  std::vector<double> bin_edges;
  std::vector<CountMatrix> iterations;
};

// Synthetic data for seed index `seed`, or the dataset split into
// iterations (identical for every seed).
absl::StatusOr<TrialData> LoadTrialData(const ExperimentConfig& config,
                                        int64_t seed);

// Runs every mechanism and sweep point on every seed. Mechanisms on one
// seed see the same data and the same unit noise. Rows are ordered by
// (mechanism, epsilon, gamma, threshold, seed, iteration) and are identical
// across runs apart from runtime_ms.
absl::StatusOr<std::vector<ResultRow>> RunExperiment(
    const ExperimentConfig& config);

}  // namespace dpoad

#endif  // DPOAD_BENCH_EXPERIMENT_H_

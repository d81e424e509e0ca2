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

#include "dpoad/bench/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "absl/strings/str_cat.h"
#include "dpoad/core/histogram.h"
#include "dpoad/core/rng.h"

namespace dpoad {
namespace {

absl::Status WithContext(const absl::Status& status, absl::string_view what) {
  return absl::Status(status.code(),
                      absl::StrCat(what, ": ", status.message()));
}

// Runs task(i) for i in [0, n) on `threads` workers. Returns the error of the
// lowest failing index, so the outcome does not depend on scheduling.
absl::Status ParallelFor(int64_t n, int threads,
                         const std::function<absl::Status(int64_t)>& task) {
  std::vector<absl::Status> status(n);
  std::atomic<int64_t> next{0};
  auto worker = [&] {
    for (int64_t i = next++; i < n; i = next++) status[i] = task(i);
  };
  const int workers = static_cast<int>(
      std::min<int64_t>(n, threads > 0 ? threads
                                       : std::max(1u, std::thread::
                                                          hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& s : status) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::StatusOr<TrialData> SplitDataset(const CsvDataset& data,
                                       const ExperimentConfig& config) {
  const int attr = config.session.attribute_index;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& window : data.windows) {
    for (const auto& record : window) {
      if (attr >= static_cast<int>(record.attributes.size())) {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute ", attr, " out of range for records of arity ",
            record.attributes.size()));
      }
      lo = std::min(lo, record.attributes[attr]);
      hi = std::max(hi, record.attributes[attr]);
    }
  }
  if (!(hi > lo)) hi = lo + 1.0;
  TrialData out;
  auto edges = EqualWidthEdges(lo, hi, config.bins);
  if (!edges.ok()) return edges.status();
  out.bin_edges = *std::move(edges);

  std::vector<std::vector<Histogram>> per_iteration(config.iterations);
  int64_t seen = 0;
  for (size_t w = 0; w < data.windows.size(); ++w) {
    const int64_t it = seen / config.records_per_iteration;
    seen += static_cast<int64_t>(data.windows[w].size());
    if (it >= config.iterations) break;
    auto h = BuildHistogram(data.windows[w], out.bin_edges, attr,
                            static_cast<int64_t>(w));
    if (!h.ok()) return h.status();
    per_iteration[it].push_back(*std::move(h));
  }
  for (int it = 0; it < config.iterations; ++it) {
    if (per_iteration[it].empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "dataset has ", data.rows, " rows, too few for ", config.iterations,
          " iterations of ", config.records_per_iteration, " records"));
    }
    auto counts = StackHistograms(per_iteration[it]);
    if (!counts.ok()) return counts.status();
    out.iterations.push_back(*std::move(counts));
  }
  return out;
}

SyntheticSpec EffectiveSynthetic(const ExperimentConfig& config) {
  SyntheticSpec spec = config.synthetic;
  spec.bins = config.bins;
  spec.iterations = config.iterations;
  return spec;
}

}  // namespace

absl::Status ExperimentConfig::Validate() const {
  if (mechanisms.empty() || epsilons.empty() || gammas.empty() ||
      thresholds.empty()) {
    return absl::InvalidArgumentError("sweeps must be non-empty");
  }
  if (seeds < 1) return absl::InvalidArgumentError("seeds must be >= 1");
  if (iterations < 1) {
    return absl::InvalidArgumentError("iterations must be >= 1");
  }
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError("epsilon must be positive");
    }
  }
  for (double g : gammas) {
    if (!(g > 0.0 && g < 1.0)) {
      return absl::InvalidArgumentError("gamma must lie in (0, 1)");
    }
  }
  for (double t : thresholds) {
    if (!(t > 0.0 && t < 1.0)) {
      return absl::InvalidArgumentError("threshold must lie in (0, 1)");
    }
  }
  if (bins < 1) return absl::InvalidArgumentError("bins must be >= 1");
  if (c_max < 0) return absl::InvalidArgumentError("c_max must be >= 0");
  if (threads < 0) return absl::InvalidArgumentError("threads must be >= 0");
  if (!dataset.empty() && records_per_iteration < 1) {
    return absl::InvalidArgumentError("records per iteration must be >= 1");
  }
  if (dataset.empty()) {
    if (auto s = EffectiveSynthetic(*this).Validate(); !s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<std::vector<double>>> GroundTruthScores(
    std::span<const CountMatrix> iterations, int64_t c_max,
    const ScoreOptions& options) {
  if (iterations.empty()) return std::vector<std::vector<double>>{};
  const int64_t bins = iterations.front().bins();
  std::vector<std::vector<double>> pools(bins);
  std::vector<std::vector<double>> out;
  for (const auto& counts : iterations) {
    if (counts.bins() != bins) {
      return absl::InvalidArgumentError("iterations disagree on bins");
    }
    ObservationMatrix test(bins, counts.windows());
    for (int64_t b = 0; b < bins; ++b) {
      auto row = test.row(b);
      for (int64_t w = 0; w < counts.windows(); ++w) {
        row[w] = static_cast<double>(
            std::clamp<int64_t>(counts.at(b, w), 0, c_max));
      }
      pools[b].insert(pools[b].end(), row.begin(), row.end());
    }
    ObservationMatrix reference(bins,
                                static_cast<int64_t>(pools.front().size()));
    for (int64_t b = 0; b < bins; ++b) {
      std::copy(pools[b].begin(), pools[b].end(), reference.row(b).begin());
    }
    auto scores = ScoreWindows(reference, test, options);
    if (!scores.ok()) return scores.status();
    out.push_back(*std::move(scores));
  }
  return out;
}

absl::StatusOr<TrialData> LoadTrialData(const ExperimentConfig& config,
                                        int64_t seed) {
  if (config.dataset.empty()) {
    auto data = GenerateSynthetic(EffectiveSynthetic(config),
                                  static_cast<uint64_t>(seed));
    if (!data.ok()) return data.status();
    return TrialData{std::move(data->bin_edges), std::move(data->iterations)};
  }
  auto csv = IngestCsv(config.dataset, config.csv);
  if (!csv.ok()) return csv.status();
  return SplitDataset(*csv, config);
}

absl::StatusOr<std::vector<ResultRow>> RunExperiment(
    const ExperimentConfig& config) {
  if (auto s = config.Validate(); !s.ok()) return s;
  const int64_t seeds = config.seeds;

  // Data and noise-free scores per seed. A dataset is read once.
  std::vector<TrialData> data(seeds);
  std::vector<std::vector<std::vector<double>>> truth(seeds);
  std::optional<TrialData> shared;
  if (!config.dataset.empty()) {
    auto d = LoadTrialData(config, 0);
    if (!d.ok()) return d.status();
    shared = *std::move(d);
  }
  auto seed_of = [&](int64_t s) {
    return static_cast<int64_t>(config.base_seed) + s;
  };
  auto prepare = [&](int64_t s) -> absl::Status {
    if (shared) {
      data[s] = *shared;
    } else {
      auto d = LoadTrialData(config, seed_of(s));
      if (!d.ok()) return WithContext(d.status(), absl::StrCat("seed ", seed_of(s)));
      data[s] = *std::move(d);
    }
    auto t = GroundTruthScores(data[s].iterations, config.c_max,
                               config.session.score_options);
    if (!t.ok()) return t.status();
    truth[s] = *std::move(t);
    return absl::OkStatus();
  };
  if (auto s = ParallelFor(seeds, config.threads, prepare); !s.ok()) return s;

  const int64_t n_mech = static_cast<int64_t>(config.mechanisms.size());
  const int64_t n_eps = static_cast<int64_t>(config.epsilons.size());
  const int64_t n_gamma = static_cast<int64_t>(config.gammas.size());
  const int64_t trials = n_mech * n_eps * n_gamma * seeds;
  auto trial_index = [&](int64_t mi, int64_t ei, int64_t gi, int64_t s) {
    return ((mi * n_eps + ei) * n_gamma + gi) * seeds + s;
  };
  std::vector<SessionTrace> traces(trials);
  auto run = [&](int64_t t) -> absl::Status {
    const int64_t s = t % seeds;
    const int64_t gi = (t / seeds) % n_gamma;
    const int64_t ei = (t / seeds / n_gamma) % n_eps;
    const int64_t mi = t / seeds / n_gamma / n_eps;
    SessionConfig sc = config.session;
    sc.mechanism = config.mechanisms[mi];
    sc.epsilon = config.epsilons[ei];
    sc.gamma = config.gammas[gi];
    sc.threshold = config.thresholds.front();
    sc.c_max = config.c_max;
    sc.bin_edges = data[s].bin_edges;
    auto trace = RunSession(data[s].iterations, sc,
                            Rng::Mix(static_cast<uint64_t>(seed_of(s))));
    if (!trace.ok()) {
      return WithContext(
          trace.status(),
          absl::StrCat(MechanismName(sc.mechanism), " epsilon=", sc.epsilon,
                       " gamma=", sc.gamma, " seed=", seed_of(s)));
    }
    traces[t] = *std::move(trace);
    return absl::OkStatus();
  };
  if (auto s = ParallelFor(trials, config.threads, run); !s.ok()) return s;

  std::vector<ResultRow> rows;
  for (int64_t mi = 0; mi < n_mech; ++mi) {
    for (int64_t ei = 0; ei < n_eps; ++ei) {
      for (int64_t gi = 0; gi < n_gamma; ++gi) {
        for (double threshold : config.thresholds) {
          for (int64_t s = 0; s < seeds; ++s) {
            const SessionTrace& trace = traces[trial_index(mi, ei, gi, s)];
            for (size_t i = 0; i < trace.iterations.size(); ++i) {
              const IterationTrace& it = trace.iterations[i];
              auto detected =
                  Classify(it.report.anomalies.scores, threshold);
              if (!detected.ok()) return detected.status();
              auto expected = Classify(truth[s][i], threshold);
              if (!expected.ok()) return expected.status();
              auto pr = ComputePrecisionRecall(*detected, *expected);
              if (!pr.ok()) return pr.status();
              const ReleaseHeader& h = it.release.header();
              rows.push_back(ResultRow{
                  .mechanism = config.mechanisms[mi],
                  .epsilon = config.epsilons[ei],
                  .gamma = config.gammas[gi],
                  .threshold = threshold,
                  .iteration = h.iteration,
                  .seed = seed_of(s),
                  .precision = pr->precision,
                  .recall = pr->recall,
                  .runtime_ms = it.runtime_ms,
                  .sensitivity_used = h.sensitivity_used,
                  .k = h.k,
                  .m = h.m,
                  .phase_switch_iter = trace.phase_switch_iteration,
              });
            }
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace dpoad

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

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "absl/strings/str_replace.h"
#include "dpoad/bench/synthetic.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"
#include "dpoad/mechanisms/laplace.h"
#include "dpoad/protocol/messages.h"
#include "dpoad/protocol/serialization.h"
#include "dpoad/protocol/session.h"
#include "gtest/gtest.h"

namespace dpoad {
namespace {

static_assert(!std::is_constructible_v<Privatized, std::vector<double>>);
static_assert(!std::is_constructible_v<Privatized, std::vector<double>,
                                       double>);
static_assert(!std::is_default_constructible_v<OwnerRelease>);
static_assert(!std::is_constructible_v<OwnerRelease, ReleaseHeader,
                                       std::vector<std::vector<double>>>);

SyntheticData SmallData(uint64_t seed, int iterations = 3) {
  SyntheticSpec spec;
  spec.windows_per_iteration = 300;
  spec.iterations = iterations;
  return *GenerateSynthetic(spec, seed);
}

SessionConfig ConfigFor(const SyntheticData& data, Mechanism mechanism) {
  SessionConfig config;
  config.mechanism = mechanism;
  config.bin_edges = data.bin_edges;
  return config;
}

TEST(SessionTest, RunsEveryMechanism) {
  const SyntheticData data = SmallData(1);
  for (Mechanism mech :
       {Mechanism::kLaplace, Mechanism::kPainFree, Mechanism::kDpoad}) {
    auto trace = RunSession(data.iterations, ConfigFor(data, mech), 5);
    ASSERT_TRUE(trace.ok()) << trace.status();
    ASSERT_EQ(trace->iterations.size(), 3u);
    for (size_t i = 0; i < trace->iterations.size(); ++i) {
      const auto& it = trace->iterations[i];
      EXPECT_EQ(it.release.iteration(), static_cast<int64_t>(i) + 1);
      EXPECT_EQ(it.report.iteration, static_cast<int64_t>(i) + 1);
      EXPECT_EQ(it.report.anomalies.scores.size(), 11u * 300u);
      for (double s : it.report.anomalies.scores) {
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 1.0);
      }
      ASSERT_EQ(it.report.updated_pdfs.size(), 11u);
      for (const DiscretePdf& p : it.report.updated_pdfs) {
        double total = 0.0;
        for (double v : p.mass()) {
          EXPECT_GE(v, 0.0);
          total += v;
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
      }
      if (mech != Mechanism::kDpoad) {
        EXPECT_EQ(it.release.phase(), Phase::kLearning);
      }
      if (mech == Mechanism::kLaplace) {
        EXPECT_EQ(it.release.header().sensitivity_used, 20.0);
      }
    }
  }
}

TEST(SessionTest, SingleWindowStaysInLearning) {
  SyntheticSpec spec;
  spec.windows_per_iteration = 1;
  spec.iterations = 3;
  const SyntheticData data = *GenerateSynthetic(spec, 2);
  auto trace = RunSession(data.iterations,
                          ConfigFor(data, Mechanism::kDpoad), 2);
  ASSERT_TRUE(trace.ok()) << trace.status();
  for (const auto& it : trace->iterations) {
    EXPECT_EQ(it.release.phase(), Phase::kLearning);
  }
  EXPECT_EQ(trace->phase_switch_iteration, 0);
}

TEST(SessionTest, DpoadPhaseIsMonotoneAndSwitches) {
  SyntheticSpec spec;
  spec.windows_per_iteration = 2000;
  spec.iterations = 4;
  const SyntheticData big = *GenerateSynthetic(spec, 3);
  auto trace =
      RunSession(big.iterations, ConfigFor(big, Mechanism::kDpoad), 3);
  ASSERT_TRUE(trace.ok()) << trace.status();
  EXPECT_GE(trace->phase_switch_iteration, 1);
  bool predicted = false;
  for (const auto& it : trace->iterations) {
    if (predicted) EXPECT_EQ(it.release.phase(), Phase::kPrediction);
    predicted = predicted || it.release.phase() == Phase::kPrediction;
    EXPECT_LE(it.report.k, it.report.m);
  }
  EXPECT_TRUE(predicted);
}

TEST(SessionTest, CumulativeSamplesStrictlyIncrease) {
  const SyntheticData data = SmallData(4, 4);
  SessionConfig config = ConfigFor(data, Mechanism::kDpoad);
  auto owner = OwnerState::Create(config);
  auto mssp = MsspState::Create(config);
  ASSERT_TRUE(owner.ok() && mssp.ok());
  const Rng rng(4);
  int64_t previous = mssp->cumulative_n();
  for (const CountMatrix& counts : data.iterations) {
    auto release = OwnerStep(*owner, counts, rng);
    ASSERT_TRUE(release.ok()) << release.status();
    auto report = MsspStep(*mssp, *release, rng);
    ASSERT_TRUE(report.ok()) << report.status();
    EXPECT_GT(mssp->cumulative_n(), previous);
    previous = mssp->cumulative_n();
    ASSERT_TRUE(owner->ApplyReport(*report).ok());
  }
}

TEST(SessionTest, DeterministicPerSeed) {
  const SyntheticData data = SmallData(5);
  const SessionConfig config = ConfigFor(data, Mechanism::kDpoad);
  auto a = RunSession(data.iterations, config, 9);
  auto b = RunSession(data.iterations, config, 9);
  auto c = RunSession(data.iterations, config, 10);
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(EncodeTrace(*a), EncodeTrace(*b));
  EXPECT_NE(EncodeTrace(*a), EncodeTrace(*c));
}

TEST(SessionTest, RecordPathMatchesCountPath) {
  const SyntheticData data = SmallData(6, 2);
  std::vector<std::vector<std::vector<Record>>> records;
  Rng place(6);
  for (const CountMatrix& m : data.iterations) {
    records.push_back(MaterializeRecords(m, data.bin_edges, place));
  }
  const SessionConfig config = ConfigFor(data, Mechanism::kPainFree);
  auto from_counts = RunSession(data.iterations, config, 1);
  auto from_records =
      RunSession(std::span<const std::vector<std::vector<Record>>>(records),
                 config, 1);
  ASSERT_TRUE(from_counts.ok() && from_records.ok())
      << from_records.status();
  EXPECT_EQ(EncodeTrace(*from_counts), EncodeTrace(*from_records));
}

TEST(SessionTest, InjectedAnomaliesOutscoreBenignCells) {
  int wins = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const SyntheticData data = SmallData(100 + seed, 3);
    auto trace =
        RunSession(data.iterations, ConfigFor(data, Mechanism::kDpoad), seed);
    ASSERT_TRUE(trace.ok()) << trace.status();
    const auto& scores = trace->iterations.back().report.anomalies.scores;
    const auto& injected = data.injected.back();
    ASSERT_EQ(scores.size(), injected.size());
    std::vector<double> anomalous;
    std::vector<double> benign;
    for (size_t i = 0; i < scores.size(); ++i) {
      (injected[i] ? anomalous : benign).push_back(scores[i]);
    }
    ASSERT_FALSE(anomalous.empty());
    const auto median = [](std::vector<double> v) {
      std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
      return v[v.size() / 2];
    };
    double mean = 0.0;
    for (double s : anomalous) mean += s;
    mean /= static_cast<double>(anomalous.size());
    wins += mean > median(benign);
  }
  EXPECT_EQ(wins, 20);
}

TEST(SessionTest, RejectsOutOfOrderAndRegressingMessages) {
  const SyntheticData data = SmallData(7, 2);
  const SessionConfig config = ConfigFor(data, Mechanism::kDpoad);
  auto owner = OwnerState::Create(config);
  auto mssp = MsspState::Create(config);
  ASSERT_TRUE(owner.ok() && mssp.ok());
  const Rng rng(7);
  auto release = OwnerStep(*owner, data.iterations[0], rng);
  ASSERT_TRUE(release.ok());

  // A report for an iteration the owner has not reached.
  MsspReport wrong;
  wrong.iteration = 5;
  EXPECT_FALSE(owner->ApplyReport(wrong).ok());

  // A prediction release before the analyst asked for one.
  std::string text = EncodeOwnerRelease(*release);
  const std::string forged =
      absl::StrReplaceAll(text, {{"phase learning", "phase prediction"}});
  auto bad = DecodeOwnerRelease(forged);
  ASSERT_TRUE(bad.ok());
  auto refused = MsspStep(*mssp, *bad, rng);
  ASSERT_FALSE(refused.ok());
  EXPECT_EQ(refused.status().code(), absl::StatusCode::kFailedPrecondition);

  // Replaying a release the analyst already consumed.
  auto report = MsspStep(*mssp, *release, rng);
  ASSERT_TRUE(report.ok());
  EXPECT_FALSE(MsspStep(*mssp, *release, rng).ok());

  // Phase cannot fall back once in prediction.
  MsspReport forward = *report;
  forward.phase_recommendation = Phase::kPrediction;
  ASSERT_TRUE(owner->ApplyReport(forward).ok());
  MsspReport back = forward;
  back.phase_recommendation = Phase::kLearning;
  EXPECT_FALSE(owner->ApplyReport(back).ok());

  // Wrong number of bins.
  EXPECT_FALSE(OwnerStep(*owner, CountMatrix::Zeros(3, 10), rng).ok());
}

TEST(SessionTest, ConfigValidation) {
  SessionConfig config;
  EXPECT_FALSE(config.Validate().ok());
  config.bin_edges = {0.0, 1.0, 2.0};
  EXPECT_TRUE(config.Validate().ok());
  config.epsilon = 0.0;
  EXPECT_FALSE(config.Validate().ok());
  config.epsilon = 1.0;
  config.gamma = 1.0;
  EXPECT_FALSE(config.Validate().ok());
}

TEST(SetupTest, EqualWidthEdges) {
  auto edges = BinEdgesForSetup({.range_lo = 0.0, .range_hi = 2.0, .bins = 4});
  ASSERT_TRUE(edges.ok());
  EXPECT_EQ(*edges, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
  auto point = BinEdgesForSetup({.range_lo = 1.0, .range_hi = 1.0, .bins = 2});
  ASSERT_TRUE(point.ok());
  EXPECT_EQ(*point, (std::vector<double>{0.5, 1.0, 1.5}));
  EXPECT_FALSE(
      BinEdgesForSetup({.range_lo = 2.0, .range_hi = 1.0, .bins = 4}).ok());
  EXPECT_FALSE(
      BinEdgesForSetup({.range_lo = 0.0, .range_hi = 1.0, .bins = 0}).ok());
}

TEST(SerializationTest, ReleaseAndReportRoundTrip) {
  const SyntheticData data = SmallData(8, 3);
  auto trace = RunSession(data.iterations,
                          ConfigFor(data, Mechanism::kDpoad), 8);
  ASSERT_TRUE(trace.ok());
  for (const auto& it : trace->iterations) {
    const std::string release_text = EncodeOwnerRelease(it.release);
    auto release = DecodeOwnerRelease(release_text);
    ASSERT_TRUE(release.ok()) << release.status();
    EXPECT_EQ(release->header(), it.release.header());
    EXPECT_EQ(EncodeOwnerRelease(*release), release_text);
    for (int64_t b = 0; b < release->header().bins; ++b) {
      const auto x = release->payload(b);
      const auto y = it.release.payload(b);
      EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
    }

    const std::string report_text = EncodeMsspReport(it.report);
    auto report = DecodeMsspReport(report_text);
    ASSERT_TRUE(report.ok()) << report.status();
    EXPECT_EQ(EncodeMsspReport(*report), report_text);
    EXPECT_EQ(report->anomalies.scores, it.report.anomalies.scores);
    EXPECT_EQ(report->updated_pdfs, it.report.updated_pdfs);
    EXPECT_EQ(report->m, it.report.m);
  }
}

TEST(SerializationTest, RejectsMalformedText) {
  EXPECT_FALSE(DecodeOwnerRelease("").ok());
  EXPECT_FALSE(DecodeOwnerRelease("dpoad/2 release\nend\n").ok());
  EXPECT_FALSE(DecodeOwnerRelease("dpoad/1 report\nend\n").ok());
  EXPECT_FALSE(DecodeOwnerRelease("dpoad/1 release\niteration 1\n").ok());
  EXPECT_FALSE(DecodeMsspReport("dpoad/1 report\niteration x\nend\n").ok());
  EXPECT_EQ(FormatDouble(0.1), "0.1");
}

}  // namespace
}  // namespace dpoad

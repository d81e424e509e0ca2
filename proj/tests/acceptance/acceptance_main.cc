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

// Runs the acceptance checks and prints one PASS/FAIL line per criterion.
// Exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpoad/bench/experiment.h"
#include "dpoad/bench/results.h"
#include "dpoad/bench/synthetic.h"
#include "dpoad/core/distance.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"
#include "dpoad/detector/detector.h"
#include "dpoad/disentangler/score_map.h"
#include "dpoad/learner/learner.h"
#include "dpoad/mechanisms/laplace.h"
#include "dpoad/protocol/messages.h"
#include "dpoad/protocol/serialization.h"
#include "dpoad/protocol/session.h"
#include "dpoad/sampler/calibration.h"
#include "dpoad/sampler/lambert_w.h"
#include "dpoad/sampler/sensitivity_sampler.h"
#include "oracles.h"

namespace dpoad {
namespace {

// A release can only be assembled from sealed Laplace outputs.
static_assert(!std::is_constructible_v<Privatized, std::vector<double>>);
static_assert(!std::is_constructible_v<Privatized, std::vector<double>,
                                       double>);
static_assert(!std::is_default_constructible_v<Privatized>);
static_assert(!std::is_default_constructible_v<OwnerRelease>);
static_assert(!std::is_constructible_v<OwnerRelease, ReleaseHeader,
                                       std::vector<std::vector<double>>>);
static_assert(!std::is_constructible_v<OwnerRelease, ReleaseHeader,
                                       std::vector<std::vector<int64_t>>>);

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double RelativeError(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Outcome FormulaSuite() {
  Outcome out;
  const auto start = Clock::now();
  double worst = 0.0;
  int points = 0;
  const auto check = [&](double got, double want, const std::string& what) {
    ++points;
    const double err = RelativeError(got, want);
    worst = std::max(worst, err);
    if (!(err <= 1e-9)) out.Fail(absl::StrCat(what, " rel err ", err));
  };
  for (int i = 0; i < 10; ++i) {
    const double gamma = 0.05 + 0.09 * i;
    auto rho = RhoStarLearning(gamma);
    if (!rho.ok()) {
      out.Fail(std::string(rho.status().message()));
      continue;
    }
    check(*rho, oracle::RhoStarLearning(gamma), "rho_star_learning");
    for (int j = 0; j < 10; ++j) {
      const double r = gamma * (0.05 + 0.09 * j);
      auto m = MLearning(gamma, r);
      auto k = m.ok() ? KLearning(*m, gamma, r) : m.status();
      if (!m.ok() || !k.ok()) {
        out.Fail("learning m/k failed");
        continue;
      }
      check(*m, oracle::MLearning(gamma, r), "m_learning");
      check(k->k, oracle::KLearning(*m, gamma, r), "k_learning");
    }
  }
  for (int i = 0; i < 10; ++i) {
    const double rho = 0.001 + 0.0199 * i;
    for (int j = 0; j < 10; ++j) {
      const double t = 2.0 + std::pow(10.0, -2.0 + 0.5 * j);
      auto m = MPrediction(rho, t);
      auto k = m.ok() ? KPrediction(*m, 0.2, rho) : m.status();
      if (!m.ok() || !k.ok()) {
        out.Fail("prediction m/k failed");
        continue;
      }
      check(*m, oracle::MPrediction(rho, t), "m_prediction");
      check(k->k, oracle::KPrediction(*m, 0.2, rho), "k_prediction");
    }
  }
  for (int i = 0; i < 100; ++i) {
    const int64_t n = 10 + 997 * i;
    const double eps = 0.1 + 0.05 * (i % 40);
    const int64_t domain = 5 + i % 30;
    const double c = 0.5 + 0.1 * (i % 7);
    auto t = ComputeT(n, eps, domain, c);
    if (!t.ok()) {
      out.Fail("compute_T failed");
      continue;
    }
    check(*t, oracle::ComputeT(n, eps, domain, c), "compute_T");
  }
  for (int i = 0; i < 100; ++i) {
    const int64_t m = static_cast<int64_t>(std::pow(10.0, 0.07 * i));
    auto r = RhoStarPrediction(m);
    if (!r.ok()) {
      out.Fail("rho_star_prediction failed");
      continue;
    }
    check(*r, oracle::RhoStarPrediction(m), "rho_star_prediction");
  }
  for (int i = 0; i < 10; ++i) {
    const double eps = 0.1 + 0.5 * i;
    for (int j = 0; j < 10; ++j) {
      const double ratio = 1.0 + 0.4 * j;
      auto u = UtilityRatioBoundAt(eps, ratio);
      if (!u.ok()) {
        out.Fail("utility_ratio_bound failed");
        continue;
      }
      check(*u, oracle::UtilityRatio(eps, ratio), "utility_ratio_bound");
    }
  }
  const double secs = Seconds(start);
  if (secs >= 1.0) out.Fail(absl::StrCat("took ", secs, " s"));
  if (out.pass) {
    out.detail = absl::StrCat(points, " points, worst rel err ", worst, ", ",
                              secs, " s");
  }
  return out;
}

Outcome LambertW() {
  Outcome out;
  auto w = LambertWMinus1(-1.0 / std::numbers::e);
  if (!w.ok() || !(std::abs(*w + 1.0) <= 1e-10)) {
    out.Fail("W(-1/e) != -1");
    return out;
  }
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double x = 0.0;
    while (x == 0.0) x = -u(gen) / std::numbers::e;
    auto v = LambertWMinus1(x);
    if (!v.ok()) {
      out.Fail(absl::StrCat("failed at x=", x));
      continue;
    }
    worst = std::max(worst, std::abs(*v * std::exp(*v) - x));
  }
  if (!(worst < 1e-12)) out.Fail(absl::StrCat("worst residual ", worst));
  if (out.pass) out.detail = absl::StrCat("worst residual ", worst);
  return out;
}

// Histograms Laplace outputs on neighbouring scalar inputs 0 and 1 (global
// sensitivity 1) and compares bin frequencies where both hold enough mass
// for the estimate to be tight.
Outcome LaplaceDp() {
  Outcome out;
  constexpr int kDraws = 100000;
  constexpr int kMinCount = 5000;
  double worst_ratio = 0.0;
  for (double eps : {0.5, 1.0, 2.0}) {
    const double b = 1.0 / eps;
    const double width = b / 2.0;
    const double lo = -6.0 * b;
    const int nbins = static_cast<int>((1.0 + 12.0 * b) / width) + 1;
    std::vector<int64_t> h0(nbins, 0);
    std::vector<int64_t> h1(nbins, 0);
    Rng rng(static_cast<uint64_t>(eps * 1000));
    for (int i = 0; i < kDraws; ++i) {
      const double input0[] = {0.0};
      const double input1[] = {1.0};
      auto y0 = LaplaceMechanism(input0, 1.0, eps, rng);
      auto y1 = LaplaceMechanism(input1, 1.0, eps, rng);
      if (!y0.ok() || !y1.ok()) {
        out.Fail("mechanism failed");
        return out;
      }
      const auto bin = [&](double y) {
        return std::clamp(static_cast<int>(std::floor((y - lo) / width)), 0,
                          nbins - 1);
      };
      ++h0[bin((*y0)[0])];
      ++h1[bin((*y1)[0])];
    }
    double worst = 0.0;
    for (int i = 1; i + 1 < nbins; ++i) {
      if (h0[i] < kMinCount || h1[i] < kMinCount) continue;
      worst = std::max(worst, std::abs(std::log(static_cast<double>(h0[i]) /
                                                static_cast<double>(h1[i]))));
    }
    worst_ratio = std::max(worst_ratio, worst - eps);
    if (!(worst <= eps + 0.1)) {
      out.Fail(absl::StrCat("eps=", eps, " log ratio ", worst));
    }
  }
  for (double b : {0.5, 1.0, 2.0}) {
    Rng rng(static_cast<uint64_t>(b * 77));
    std::vector<double> draws(kDraws);
    for (double& d : draws) d = *SampleLaplace(b, rng);
    const double mean =
        std::accumulate(draws.begin(), draws.end(), 0.0) / kDraws;
    double var = 0.0;
    for (double d : draws) var += (d - mean) * (d - mean);
    var /= kDraws - 1;
    const double rel = std::abs(var - 2.0 * b * b) / (2.0 * b * b);
    if (!(rel <= 0.05)) {
      out.Fail(absl::StrCat("b=", b, " variance off by ", rel));
    }
  }
  if (out.pass) {
    out.detail = absl::StrCat("max (log ratio - eps) ", worst_ratio);
  }
  return out;
}

Outcome OrderStatisticSampler() {
  Outcome out;
  const std::vector<double> uniform(11, 1.0 / 11.0);
  const int64_t exact = oracle::DifferenceQuantile(uniform, 0.95);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    auto s = SampleSensitivityUniform(10, 1000, 950, rng);
    if (!s.ok()) {
      out.Fail(std::string(s.status().message()));
      return out;
    }
    if (std::abs(s->chosen - static_cast<double>(exact)) > 1.0) {
      out.Fail(absl::StrCat("seed ", seed, " chose ", s->chosen, " vs ",
                            exact));
    }
  }
  if (out.pass) out.detail = absl::StrCat("exact 95th percentile ", exact);
  return out;
}

Outcome LearningConvergence() {
  Outcome out;
  const DiscretePdf truth =
      *DiscretePdf::FromWeights({1, 3, 6, 10, 14, 16, 14, 10, 6, 3, 1});
  std::string medians;
  double previous = INFINITY;
  double slowest = 0.0;
  for (int n : {250, 1000, 4000}) {
    std::vector<double> errors;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      const auto start = Clock::now();
      Rng rng(seed);
      std::discrete_distribution<int64_t> draw(truth.mass().begin(),
                                               truth.mass().end());
      std::vector<int64_t> counts(n);
      for (auto& c : counts) c = draw(rng.engine());
      const auto hist = ValueHistogram(counts, truth.domain_max());
      auto noisy = LaplaceMechanism(hist, 1.0, 1.0, rng);
      if (!noisy.ok()) {
        out.Fail("mechanism failed");
        return out;
      }
      errors.push_back(
          *KolmogorovDistance(EstimatePdfFromHistogram(*noisy), truth));
      slowest = std::max(slowest, Seconds(start));
    }
    const double median = Median(errors);
    absl::StrAppend(&medians, medians.empty() ? "" : " -> ", median);
    if (!(median < previous)) {
      out.Fail(absl::StrCat("median not decreasing at n=", n));
    }
    previous = median;
  }
  if (slowest >= 1.0) out.Fail(absl::StrCat("a run took ", slowest, " s"));
  if (out.pass) out.detail = absl::StrCat("median d_K ", medians);
  else out.detail += absl::StrCat(" (", medians, ")");
  return out;
}

Outcome Disentangler() {
  Outcome out;
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int size = 2 + trial % 40;
    std::uniform_real_distribution<double> u(1.0, 2.0);
    std::vector<double> w(size);
    for (double& x : w) x = u(gen);
    auto map = ScoreMap::Build(*DiscretePdf::FromWeights(w));
    if (!map.ok()) {
      out.Fail(std::string(map.status().message()));
      return out;
    }
    std::vector<int64_t> counts(size);
    std::iota(counts.begin(), counts.end(), 0);
    if (Reconstruct(Disentangle(counts, *map), *map) != counts) {
      out.Fail(absl::StrCat("round trip failed on trial ", trial));
    }
  }
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution zero(0.2);
  for (int trial = 0; trial < 1000; ++trial) {
    const int size = 1 + trial % 30;
    std::vector<double> w(size);
    for (double& x : w) x = zero(gen) ? 0.0 : e(gen);
    w[0] += 1e-3;
    const DiscretePdf pdf = *DiscretePdf::FromWeights(w);
    auto map = ScoreMap::Build(pdf);
    if (!map.ok()) {
      out.Fail(std::string(map.status().message()));
      return out;
    }
    for (int a = 0; a < size; ++a) {
      for (int b = 0; b < size; ++b) {
        if (pdf[a] < pdf[b] && map->score(a) < map->score(b)) {
          out.Fail(absl::StrCat("monotonicity broken on trial ", trial));
        }
      }
    }
  }
  if (out.pass) out.detail = "100 round trips, 1000 monotone maps";
  return out;
}

Outcome KsOracle() {
  Outcome out;
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const bool ties = trial % 2 == 0;
    std::vector<double> a(size(gen));
    std::vector<double> b(size(gen));
    for (double& x : a) x = ties ? small(gen) : u(gen);
    for (double& x : b) x = ties ? small(gen) : u(gen);
    auto d = KsStatistic(a, b);
    if (!d.ok() || *d != oracle::KsBreakpointScan(a, b)) {
      out.Fail(absl::StrCat("mismatch on pair ", trial));
    }
  }
  if (out.pass) out.detail = "500 pairs exact";
  return out;
}

Outcome UtilityRatio() {
  Outcome out;
  for (int64_t m : {1, 10, 917631}) {
    auto u = UtilityRatioBound(1.0, m, m);
    if (!u.ok() || *u != 1.0) out.Fail("ratio at m = k is not 1");
  }
  for (double eps : {0.5, 1.0, 2.0}) {
    double previous = 1.0;
    for (double r = 1.05; r <= 8.0; r += 0.05) {
      auto u = UtilityRatioBoundAt(eps, r);
      if (!u.ok() || !(*u > previous)) {
        out.Fail(absl::StrCat("not increasing at eps=", eps, " r=", r));
        break;
      }
      previous = *u;
    }
  }
  auto at2 = UtilityRatioBound(1.0, 20, 10);
  const double direct = oracle::UtilityRatio(1.0, 2.0);
  if (!at2.ok() || std::abs(*at2 - 1.197) > 1e-3 ||
      std::abs(*at2 - direct) > 1e-12) {
    out.Fail("value at (1, 2) off");
  }
  if (out.pass) out.detail = absl::StrCat("ratio(1, 2) = ", *at2);
  return out;
}

bool IsMechanism(const ResultRow& r, Mechanism m, int64_t iteration) {
  return r.mechanism == m && r.iteration == iteration;
}

Outcome EndToEndOrdering(const std::vector<ResultRow>& rows, double secs) {
  Outcome out;
  const auto median = [&](Mechanism m, double ResultRow::*field) {
    return MedianOf(
        rows, [m](const ResultRow& r) { return IsMechanism(r, m, 6); }, field);
  };
  const double pd = median(Mechanism::kDpoad, &ResultRow::precision);
  const double pp = median(Mechanism::kPainFree, &ResultRow::precision);
  const double pl = median(Mechanism::kLaplace, &ResultRow::precision);
  const double rd = median(Mechanism::kDpoad, &ResultRow::recall);
  const double rp = median(Mechanism::kPainFree, &ResultRow::recall);
  const double rl = median(Mechanism::kLaplace, &ResultRow::recall);
  const std::string values =
      absl::StrCat("precision ", pd, " > ", pp, " > ", pl, "; recall ", rd,
                   " > ", rp, " > ", rl, "; ", secs, " s");
  if (!(pd > pp && pp > pl)) out.Fail("precision not ordered");
  if (!(rd > rp && rp > rl)) out.Fail("recall not ordered");
  if (secs >= 120.0) out.Fail("over two minutes");
  out.detail = out.pass ? values : absl::StrCat(out.detail, ": ", values);
  return out;
}

Outcome Trends(const std::vector<ResultRow>& base,
               const std::vector<ResultRow>& sweep) {
  Outcome out;
  std::string iters;
  double previous = -INFINITY;
  for (int64_t it = 1; it <= 6; ++it) {
    const double p = MedianOf(
        base,
        [it](const ResultRow& r) {
          return IsMechanism(r, Mechanism::kDpoad, it);
        },
        &ResultRow::precision);
    absl::StrAppend(&iters, iters.empty() ? "" : " ", p);
    if (!(p >= previous)) {
      out.Fail(absl::StrCat("DPOAD precision drops at iteration ", it));
    }
    previous = p;
  }
  std::string eps_line;
  for (Mechanism m :
       {Mechanism::kLaplace, Mechanism::kPainFree, Mechanism::kDpoad}) {
    double last = -INFINITY;
    absl::StrAppend(&eps_line, "; ", MechanismName(m));
    for (double eps : {0.1, 0.5, 1.0, 2.0}) {
      const double p = MedianOf(
          sweep,
          [m, eps](const ResultRow& r) {
            return IsMechanism(r, m, 6) && r.epsilon == eps;
          },
          &ResultRow::precision);
      absl::StrAppend(&eps_line, " ", p);
      if (!(p >= last)) {
        out.Fail(absl::StrCat(MechanismName(m), " precision drops at eps=",
                              eps));
      }
      last = p;
    }
  }
  const std::string values =
      absl::StrCat("DPOAD by iteration ", iters, eps_line);
  out.detail = out.pass ? values : absl::StrCat(out.detail, ": ", values);
  return out;
}

Outcome DeterminismAndSealing() {
  Outcome out;
  SyntheticSpec spec;
  spec.windows_per_iteration = 500;
  spec.iterations = 3;
  auto data = GenerateSynthetic(spec, 11);
  if (!data.ok()) {
    out.Fail(std::string(data.status().message()));
    return out;
  }
  for (Mechanism m :
       {Mechanism::kLaplace, Mechanism::kPainFree, Mechanism::kDpoad}) {
    SessionConfig config;
    config.mechanism = m;
    config.bin_edges = data->bin_edges;
    auto a = RunSession(data->iterations, config, 11);
    auto b = RunSession(data->iterations, config, 11);
    if (!a.ok() || !b.ok()) {
      out.Fail("session failed");
      return out;
    }
    if (EncodeTrace(*a) != EncodeTrace(*b)) {
      out.Fail(absl::StrCat(MechanismName(m), " traces differ"));
    }
    // Every payload value went through the mechanism: none is a raw count.
    for (const auto& it : a->iterations) {
      if (it.release.phase() != Phase::kLearning) continue;
      for (int64_t bin = 0; bin < it.release.header().bins; ++bin) {
        if (!(it.release.payload_scale(bin) > 0.0)) {
          out.Fail("payload released without noise");
        }
        const auto raw = data->iterations[it.release.iteration() - 1].bin(bin);
        const auto sent = it.release.payload(bin);
        for (size_t w = 0; w < sent.size(); ++w) {
          if (sent[w] == static_cast<double>(raw[w])) {
            out.Fail("payload value equals the raw count");
            break;
          }
        }
      }
    }
  }
  if (out.pass) out.detail = "byte-identical traces; releases sealed";
  return out;
}

int Main() {
  int failures = 0;
  const auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("criterion %d %s: %s (%s)\n", id, name,
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };
  report(1, "formula suite", FormulaSuite());
  report(2, "lambert w", LambertW());
  report(3, "laplace dp", LaplaceDp());
  report(4, "order-statistic sampler", OrderStatisticSampler());
  report(5, "learning convergence", LearningConvergence());
  report(6, "disentangler", Disentangler());
  report(7, "ks oracle", KsOracle());
  report(8, "utility ratio", UtilityRatio());

  ExperimentConfig config;
  auto start = Clock::now();
  auto base = RunExperiment(config);
  const double secs = Seconds(start);
  if (!base.ok()) {
    Outcome o;
    o.Fail(std::string(base.status().message()));
    report(9, "end-to-end ordering", o);
    report(10, "trends", o);
  } else {
    report(9, "end-to-end ordering", EndToEndOrdering(*base, secs));
    ExperimentConfig sweep_config;
    sweep_config.epsilons = {0.1, 0.5, 1.0, 2.0};
    auto sweep = RunExperiment(sweep_config);
    if (!sweep.ok()) {
      Outcome o;
      o.Fail(std::string(sweep.status().message()));
      report(10, "trends", o);
    } else {
      report(10, "trends", Trends(*base, *sweep));
    }
  }
  report(11, "determinism and sealing", DeterminismAndSealing());
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace dpoad

int main() { return dpoad::Main(); }

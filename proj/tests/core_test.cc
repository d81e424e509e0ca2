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

#include <cmath>
#include <random>
#include <vector>

#include "dpoad/core/distance.h"
#include "dpoad/core/histogram.h"
#include "dpoad/core/rng.h"
#include "dpoad/core/types.h"
#include "dpoad/kernels/kernels.h"
#include "gtest/gtest.h"

namespace dpoad {
namespace {

std::vector<double> RandomMass(std::mt19937_64& gen, int size) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(size);
  double total = 0.0;
  for (double& x : w) total += (x = u(gen));
  for (double& x : w) x /= total;
  return w;
}

TEST(PhaseTest, NamesRoundTrip) {
  for (Phase p : {Phase::kLearning, Phase::kPrediction}) {
    auto parsed = ParsePhase(PhaseName(p));
    ASSERT_TRUE(parsed.ok());
    EXPECT_EQ(*parsed, p);
  }
  EXPECT_FALSE(ParsePhase("training").ok());
}

TEST(CountMatrixTest, RejectsNegativeCountsAndBadShape) {
  EXPECT_FALSE(CountMatrix::Create(2, 2, {1, 2, 3}).ok());
  EXPECT_FALSE(CountMatrix::Create(1, 2, {1, -1}).ok());
  auto m = CountMatrix::Create(2, 2, {1, 2, 3, 4});
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(m->at(1, 0), 3);
  EXPECT_FALSE(m->Set(2, 0, 1).ok());
  EXPECT_FALSE(m->Set(0, 0, -1).ok());
}

TEST(DiscretePdfTest, CreateValidatesMass) {
  EXPECT_FALSE(DiscretePdf::Create({}).ok());
  EXPECT_FALSE(DiscretePdf::Create({0.5, 0.6}).ok());
  EXPECT_FALSE(DiscretePdf::Create({1.5, -0.5}).ok());
  EXPECT_TRUE(DiscretePdf::Create({0.25, 0.75}).ok());
  auto w = DiscretePdf::FromWeights({0.0, 0.0, 0.0});
  ASSERT_TRUE(w.ok());
  EXPECT_EQ(*w, DiscretePdf::Uniform(2));
}

TEST(DiscretePdfTest, MomentsOfUniform) {
  const DiscretePdf u = DiscretePdf::Uniform(10);
  EXPECT_NEAR(u.Mean(), 5.0, 1e-12);
  EXPECT_NEAR(u.Variance(), 10.0, 1e-12);  // (11^2 - 1) / 12
}

TEST(PrivacyParamsTest, RejectsOutOfRange) {
  EXPECT_FALSE(PrivacyParams::Create(0.0, 0.2, 0.1, Phase::kLearning).ok());
  EXPECT_FALSE(PrivacyParams::Create(1.0, 0.2, 0.3, Phase::kLearning).ok());
  EXPECT_FALSE(PrivacyParams::Create(1.0, 0.9, 0.6, Phase::kLearning).ok());
  EXPECT_TRUE(PrivacyParams::Create(1.0, 0.2, 0.1, Phase::kLearning).ok());
}

TEST(RngTest, ForkIsIndependentOfParentPosition) {
  Rng a(7);
  Rng b(7);
  b.Uniform01();
  b.Uniform01();
  Rng fa = a.Fork(3);
  Rng fb = b.Fork(3);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(fa.Uniform01(), fb.Uniform01());
  EXPECT_NE(a.Fork(3).Uniform01(), a.Fork(4).Uniform01());
}

TEST(RngTest, UniformStaysInUnitInterval) {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(HistogramTest, BinsWithBoundaryClamping) {
  auto edges = EqualWidthEdges(0.0, 3.0, 3);
  ASSERT_TRUE(edges.ok());
  std::vector<Record> records = {{{-5.0}}, {{0.0}}, {{1.0}}, {{2.5}},
                                 {{3.0}},  {{99.0}}};
  auto h = BuildHistogram(records, *edges, 0);
  ASSERT_TRUE(h.ok());
  EXPECT_EQ(std::vector<int64_t>(h->counts().begin(), h->counts().end()),
            (std::vector<int64_t>{2, 1, 3}));
  EXPECT_EQ(h->Total(), 6);
}

TEST(HistogramTest, RejectsBadInput) {
  EXPECT_FALSE(ValidateBinEdges(std::vector<double>{1.0}).ok());
  EXPECT_FALSE(ValidateBinEdges(std::vector<double>{0.0, 0.0}).ok());
  EXPECT_FALSE(ValidateBinEdges(std::vector<double>{0.0, NAN}).ok());
  EXPECT_FALSE(EqualWidthEdges(0.0, 1.0, 0).ok());
  std::vector<Record> records = {{{1.0}}};
  EXPECT_FALSE(BuildHistogram(records, std::vector<double>{0.0, 2.0}, 1).ok());
}

TEST(HistogramTest, StackKeepsWindowOrder) {
  const std::vector<double> edges = {0.0, 1.0, 2.0};
  auto h0 = Histogram::Create(edges, {1, 2}, 0);
  auto h1 = Histogram::Create(edges, {3, 4}, 1);
  ASSERT_TRUE(h0.ok() && h1.ok());
  std::vector<Histogram> hs = {*h0, *h1};
  auto m = StackHistograms(hs);
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(m->at(0, 1), 3);
  EXPECT_EQ(m->at(1, 0), 2);
}

// Brute-force Kolmogorov distance: compare the CDFs term by term.
double KolmogorovOracle(const DiscretePdf& p, const DiscretePdf& q) {
  double best = 0.0;
  for (int64_t j = 0; j <= p.domain_max(); ++j) {
    double fp = 0.0;
    double fq = 0.0;
    for (int64_t i = 0; i <= j; ++i) {
      fp += p[i];
      fq += q[i];
    }
    best = std::max(best, std::abs(fp - fq));
  }
  return best;
}

TEST(DistanceTest, MatchesOraclesAndOrdering) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int size = 1 + trial % 30;
    auto p = DiscretePdf::Create(RandomMass(gen, size));
    auto q = DiscretePdf::Create(RandomMass(gen, size));
    ASSERT_TRUE(p.ok() && q.ok());
    auto k = KolmogorovDistance(*p, *q);
    auto tv = TotalVariationDistance(*p, *q);
    ASSERT_TRUE(k.ok() && tv.ok());
    EXPECT_NEAR(*k, KolmogorovOracle(*p, *q), 1e-12);
    double l1 = 0.0;
    for (int i = 0; i < size; ++i) l1 += std::abs((*p)[i] - (*q)[i]);
    EXPECT_NEAR(*tv, 0.5 * l1, 1e-12);
    EXPECT_LE(*k, *tv + 1e-12);
  }
}

TEST(DistanceTest, DomainMismatchFails) {
  EXPECT_FALSE(
      KolmogorovDistance(DiscretePdf::Uniform(3), DiscretePdf::Uniform(4))
          .ok());
  EXPECT_FALSE(
      TotalVariationDistance(DiscretePdf::Uniform(3), DiscretePdf::Uniform(4))
          .ok());
}

class KernelEquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!kernels::Avx2Available()) GTEST_SKIP() << "no AVX2 on this host";
  }
};

TEST_F(KernelEquivalenceTest, AddScaledIsBitIdentical) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n(0.0, 10.0);
  for (int size : {0, 1, 3, 4, 5, 7, 8, 9, 31, 64, 1001}) {
    std::vector<double> v(size), noise(size), a(size), b(size);
    for (int i = 0; i < size; ++i) {
      v[i] = n(gen);
      noise[i] = n(gen);
    }
    kernels::scalar::AddScaled(v, 3.7, noise, a);
    kernels::avx2::AddScaled(v, 3.7, noise, b);
    EXPECT_EQ(a, b) << "size " << size;
  }
}

TEST_F(KernelEquivalenceTest, ReductionsAgreeWithScalar) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int size : {0, 1, 2, 3, 4, 5, 8, 13, 21, 100, 4097}) {
    std::vector<double> a(size), b(size);
    for (int i = 0; i < size; ++i) {
      a[i] = u(gen);
      b[i] = u(gen);
    }
    const double s0 = kernels::scalar::SumAbsDiff(a, b);
    const double s1 = kernels::avx2::SumAbsDiff(a, b);
    EXPECT_NEAR(s0, s1, 1e-12 * std::max(1.0, s0));
    const double p0 = kernels::scalar::MaxAbsPrefixDiff(a, b);
    const double p1 = kernels::avx2::MaxAbsPrefixDiff(a, b);
    EXPECT_NEAR(p0, p1, 1e-12 * std::max(1.0, static_cast<double>(size)));
  }
}

TEST(KernelDispatchTest, ScopedIsaPinsAndRestores) {
  const kernels::Isa before = kernels::ActiveIsa();
  {
    kernels::ScopedIsa pin(kernels::Isa::kScalar);
    EXPECT_EQ(kernels::ActiveIsa(), kernels::Isa::kScalar);
    const std::vector<double> a = {1.0, -2.0, 3.0};
    const std::vector<double> b = {0.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(kernels::SumAbsDiff(a, b), 6.0);
    EXPECT_DOUBLE_EQ(kernels::MaxAbsPrefixDiff(a, b), 2.0);
  }
  EXPECT_EQ(kernels::ActiveIsa(), before);
}

}  // namespace
}  // namespace dpoad

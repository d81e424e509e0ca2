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
#include <type_traits>
#include <vector>

#include "dpoad/core/rng.h"
#include "dpoad/mechanisms/laplace.h"
#include "gtest/gtest.h"

namespace dpoad {
namespace {

// A Privatized value can only come out of Privatize.
static_assert(!std::is_constructible_v<Privatized, std::vector<double>, double>);
static_assert(!std::is_constructible_v<Privatized, std::vector<double>>);
static_assert(!std::is_default_constructible_v<Privatized>);

TEST(LaplaceTest, ZeroScaleIsExactAndConsumesNothing) {
  Rng a(3);
  Rng b(3);
  auto x = SampleLaplace(0.0, a);
  ASSERT_TRUE(x.ok());
  EXPECT_EQ(*x, 0.0);
  EXPECT_EQ(a.Uniform01(), b.Uniform01());
}

TEST(LaplaceTest, RejectsBadParameters) {
  Rng rng(1);
  EXPECT_FALSE(SampleLaplace(-1.0, rng).ok());
  EXPECT_FALSE(SampleLaplace(INFINITY, rng).ok());
  const std::vector<double> v = {1.0};
  EXPECT_FALSE(LaplaceMechanism(v, 1.0, 0.0, rng).ok());
  EXPECT_FALSE(LaplaceMechanism(v, -1.0, 1.0, rng).ok());
  EXPECT_FALSE(Privatize(v, NAN, 1.0, rng).ok());
}

TEST(LaplaceTest, MomentsMatchTheDensity) {
  Rng rng(17);
  const double b = 2.5;
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  double abs_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    auto x = SampleLaplace(b, rng);
    ASSERT_TRUE(x.ok());
    sum += *x;
    sq += *x * *x;
    abs_sum += std::abs(*x);
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n / (2 * b * b), 1.0, 0.03);
  EXPECT_NEAR(abs_sum / n / b, 1.0, 0.02);  // E|X| = b
}

TEST(LaplaceTest, HugeEpsilonReturnsNearlyTheInput) {
  Rng rng(5);
  const std::vector<double> v = {3.0, 7.0, 0.0};
  auto out = LaplaceMechanism(v, 1.0, 1e12, rng);
  ASSERT_TRUE(out.ok());
  for (size_t i = 0; i < v.size(); ++i) EXPECT_NEAR((*out)[i], v[i], 1e-9);
}

TEST(LaplaceTest, PrivatizeRecordsTheScale) {
  Rng rng(9);
  const std::vector<double> v = {1.0, 2.0};
  auto p = Privatize(v, 4.0, 2.0, rng);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->size(), 2u);
  EXPECT_DOUBLE_EQ(p->noise_scale(), 2.0);
}

TEST(LaplaceTest, SameSeedSameNoise) {
  const std::vector<double> v = {1.0, 2.0, 3.0};
  Rng a(21);
  Rng b(21);
  auto x = LaplaceMechanism(v, 1.0, 1.0, a);
  auto y = LaplaceMechanism(v, 1.0, 1.0, b);
  ASSERT_TRUE(x.ok() && y.ok());
  EXPECT_EQ(*x, *y);
}

TEST(LaplaceTest, CountQuerySensitivity) {
  EXPECT_EQ(GlobalSensitivityCountQuery(1), 1.0);
  EXPECT_EQ(GlobalSensitivityCountQuery(20), 20.0);
}

}  // namespace
}  // namespace dpoad

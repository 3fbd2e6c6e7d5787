//
// Copyright 2026 The PMW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pmw/noise.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>
#include "oracles.h"

namespace pmw {
namespace {

using testing::SampleMoments;

constexpr int kDraws = 10000;

std::vector<double> Draw(NoiseKind kind, uint64_t seed, int count) {
  RandomStream stream(seed, 0);
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(Sample(kind, stream));
  return out;
}

TEST(SampleTest, ZeroKindAndZeroStreamReturnZero) {
  RandomStream seeded(1, 0);
  EXPECT_EQ(Sample(NoiseKind::kZero, seeded), 0.0);
  RandomStream zero = RandomStream::Zero();
  for (NoiseKind kind :
       {NoiseKind::kStandardLaplace, NoiseKind::kStandardGaussian,
        NoiseKind::kStandardExponential, NoiseKind::kZero}) {
    EXPECT_EQ(Sample(kind, zero), 0.0);
  }
}

TEST(SampleTest, LaplaceInverseCdfAtMedianAndUpperDecile) {
  RandomStream stream = RandomStream::Scripted({0.5, 0.9});
  EXPECT_EQ(Sample(NoiseKind::kStandardLaplace, stream), 0.0);
  EXPECT_NEAR(Sample(NoiseKind::kStandardLaplace, stream), -std::log(0.2),
              1e-12);
  EXPECT_NEAR(-std::log(0.2), 1.60944, 1e-5);
}

TEST(SampleTest, LaplaceInverseCdfIsOddAroundMedian) {
  for (double u : {0.01, 0.2, 0.37, 0.49}) {
    EXPECT_NEAR(LaplaceFromUniform(u), -LaplaceFromUniform(1.0 - u), 1e-12);
  }
}

TEST(SampleTest, ExponentialInverseCdfAtMedian) {
  RandomStream stream = RandomStream::Scripted({0.5});
  EXPECT_NEAR(Sample(NoiseKind::kStandardExponential, stream), std::log(2.0),
              1e-12);
  EXPECT_NEAR(std::log(2.0), 0.69315, 1e-5);
}

TEST(SampleTest, GaussianInverseCdfMatchesKnownQuantiles) {
  EXPECT_NEAR(GaussianFromUniform(0.5), 0.0, 1e-15);
  EXPECT_NEAR(GaussianFromUniform(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(GaussianFromUniform(0.025), -1.959963984540054, 1e-12);
  EXPECT_NEAR(GaussianFromUniform(0.8413447460685429), 1.0, 1e-12);
}

TEST(SampleTest, ScriptedStreamThrowsWhenExhausted) {
  RandomStream stream = RandomStream::Scripted({0.3});
  Sample(NoiseKind::kStandardGaussian, stream);
  EXPECT_THROW(Sample(NoiseKind::kStandardGaussian, stream),
               std::out_of_range);
  EXPECT_THROW(RandomStream::Scripted({0.0}), std::invalid_argument);
  EXPECT_THROW(RandomStream::Scripted({1.0}), std::invalid_argument);
}

// Mean within 5 standard errors of mu and variance within 5 standard
// errors of var, where the variance standard error uses the fourth central
// moment mu4: sqrt((mu4 - var^2) / n).
void ExpectMoments(NoiseKind kind, double mu, double var, double mu4) {
  const auto draws = Draw(kind, 20261015, kDraws);
  const auto m = SampleMoments(draws);
  const double n = kDraws;
  EXPECT_NEAR(m.mean, mu, 5.0 * std::sqrt(var / n));
  EXPECT_NEAR(m.variance, var, 5.0 * std::sqrt((mu4 - var * var) / n));
}

TEST(SampleTest, LaplaceMoments) {
  ExpectMoments(NoiseKind::kStandardLaplace, 0.0, 2.0, 24.0);
}

TEST(SampleTest, GaussianMoments) {
  ExpectMoments(NoiseKind::kStandardGaussian, 0.0, 1.0, 3.0);
}

TEST(SampleTest, ExponentialMoments) {
  ExpectMoments(NoiseKind::kStandardExponential, 1.0, 1.0, 9.0);
}

TEST(RandomStreamTest, EqualKeysReplayBitForBit) {
  for (NoiseKind kind :
       {NoiseKind::kStandardLaplace, NoiseKind::kStandardGaussian,
        NoiseKind::kStandardExponential}) {
    const auto a = Draw(kind, 77, 1000);
    const auto b = Draw(kind, 77, 1000);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(std::bit_cast<uint64_t>(a[i]), std::bit_cast<uint64_t>(b[i]));
    }
  }
}

TEST(RandomStreamTest, DistinctStreamIdsDiffer) {
  RandomStream a(5, 0);
  RandomStream b(5, 1);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a.NextUniform() == b.NextUniform();
  EXPECT_EQ(equal, 0);
}

TEST(RandomStreamTest, UniformsStayInOpenUnitInterval) {
  RandomStream stream(9, 3);
  for (int i = 0; i < kDraws; ++i) {
    const double u = stream.NextUniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStreamTest, NextIndexIsUniformOverSmallBound) {
  RandomStream stream(11, 0);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[stream.NextIndex(7)];
  // Binomial(70000, 1/7): sd ~ 92.6.
  for (int c : counts) EXPECT_NEAR(c, draws / 7.0, 5.0 * 92.6);
  EXPECT_THROW(stream.NextIndex(0), std::invalid_argument);
}

TEST(RandomStreamTest, ZeroStreamIndexIsLastSlot) {
  RandomStream zero = RandomStream::Zero();
  EXPECT_EQ(zero.NextIndex(1), 0u);
  EXPECT_EQ(zero.NextIndex(10), 9u);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_TRUE(zero.Split(4).is_zero());
}

TEST(RandomStreamTest, SplitIsDeterministicAndDoesNotAdvanceParent) {
  RandomStream parent(21, 2);
  RandomStream reference(21, 2);
  RandomStream c1 = parent.Split(1);
  RandomStream c1_again = parent.Split(1);
  RandomStream c2 = parent.Split(2);
  EXPECT_EQ(parent.NextUniform(), reference.NextUniform());
  const double x1 = c1.NextUniform();
  EXPECT_EQ(x1, c1_again.NextUniform());
  EXPECT_NE(x1, c2.NextUniform());
  // Grandchildren are keyed by the full lineage.
  EXPECT_NE(c1.Split(1).NextUniform(), c2.Split(1).NextUniform());
}

}  // namespace
}  // namespace pmw

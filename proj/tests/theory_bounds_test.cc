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

#include "pmw/theory_bounds.h"

#include <cmath>
#include <stdexcept>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "oracles.h"

namespace pmw {
namespace {

using ::testing::HasSubstr;
using testing::Simpson;

// The two arguments of the grid-coarseness minimum, from a closed-form
// quantile function.
struct CoarsenessArgs {
  double left = 0.0;
  double right = 0.0;
};

template <typename Quantile>
CoarsenessArgs CoarsenessOracle(Quantile xi, double zeta, double lower,
                                double upper) {
  const double a = 5.0 * zeta / 4.0;
  const double b = 3.0 * zeta / 4.0;
  return {(xi(a) - xi(b)) / (upper - xi(a) + 1.0),
          (xi(1.0 - b) - xi(1.0 - a)) / (xi(1.0 - a) - lower + 1.0)};
}

TEST(GridCoarsenessLimitTest, UniformOracle) {
  // xi_q = q: gaps are 0.125 - 0.075 = 0.05 on both sides and both
  // denominators are 1.875.
  const auto args =
      CoarsenessOracle([](double q) { return q; }, 0.1, 0.0, 1.0);
  EXPECT_NEAR(args.left, 0.05 / 1.875, 1e-15);
  EXPECT_NEAR(args.right, 0.05 / 1.875, 1e-15);
  EXPECT_NEAR(GridCoarsenessLimit(DistributionOracle::Uniform(), 0.1, 0.0, 1.0),
              0.05 / 1.875, 1e-12);
  EXPECT_NEAR(0.05 / 1.875, 0.0266667, 1e-7);
}

TEST(GridCoarsenessLimitTest, SymmetricLawWithSymmetricBounds) {
  const auto oracle = DistributionOracle::Gaussian(0.0, 2.0);
  const double value = GridCoarsenessLimit(oracle, 0.08, -9.0, 9.0);
  const auto args = CoarsenessOracle(oracle.quantile, 0.08, -9.0, 9.0);
  EXPECT_NEAR(args.left, args.right, 1e-12);
  EXPECT_NEAR(value, args.left, 1e-12);
}

TEST(GridCoarsenessLimitTest, ExponentialOracle) {
  // 5 zeta / 4 = 0.05, u = -2 log 0.05, l = -u.
  const double zeta = 0.04;
  const double upper = -2.0 * std::log(0.05);
  const auto args = CoarsenessOracle(
      [](double q) { return -std::log(1.0 - q); }, zeta, -upper, upper);
  const double expected = std::min(args.left, args.right);
  EXPECT_NEAR(GridCoarsenessLimit(DistributionOracle::Exponential(1.0), zeta,
                                  -upper, upper),
              expected, 1e-12);
  EXPECT_NEAR(expected, 0.0030020, 1e-6);
}

TEST(GridCoarsenessLimitTest, LargerUpperBoundTightensLimit) {
  const auto oracle = DistributionOracle::Uniform();
  const double at_one = GridCoarsenessLimit(oracle, 0.1, 0.0, 1.0);
  const double at_two = GridCoarsenessLimit(oracle, 0.1, 0.0, 2.0);
  EXPECT_LT(at_two, at_one);
  const auto a1 = CoarsenessOracle([](double q) { return q; }, 0.1, 0.0, 1.0);
  const auto a2 = CoarsenessOracle([](double q) { return q; }, 0.1, 0.0, 2.0);
  EXPECT_LT(a2.left, a1.left);
}

TEST(GridCoarsenessLimitTest, NamesViolatedInequality) {
  const auto oracle = DistributionOracle::Uniform();
  try {
    GridCoarsenessLimit(oracle, 0.5, 0.0, 1.0);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_THAT(e.what(), HasSubstr("5 zeta / 4 < 1/2"));
  }
  try {
    GridCoarsenessLimit(oracle, 0.1, 0.5, 1.0);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_THAT(e.what(), HasSubstr("lower <="));
  }
  try {
    GridCoarsenessLimit(oracle, 0.1, 0.0, 0.5);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_THAT(e.what(), HasSubstr("upper >="));
  }
}

TEST(DistributionOracleTest, QuantilesAreMonotoneAndMomentsKnown) {
  for (const auto& oracle :
       {DistributionOracle::Uniform(), DistributionOracle::Exponential(2.0),
        DistributionOracle::Gaussian(1.0, 3.0),
        DistributionOracle::StudentT(3.0)}) {
    double previous = -1e300;
    for (int i = 1; i < 100; ++i) {
      const double x = oracle.quantile(i / 100.0);
      EXPECT_GT(x, previous) << oracle.name;
      previous = x;
    }
  }
  EXPECT_DOUBLE_EQ(DistributionOracle::Exponential(2.0).mean, 0.5);
  EXPECT_DOUBLE_EQ(DistributionOracle::StudentT(3.0).std, std::sqrt(3.0));
  EXPECT_NEAR(DistributionOracle::StudentT(3.0).quantile(0.975), 3.182446, 1e-6);
  EXPECT_THROW(DistributionOracle::StudentT(2.0), std::invalid_argument);
}

TEST(AggregationEnvelopeTest, Examples) {
  // log(max(2 * 2 / 1, 4) / 0.01) = log 400.
  EXPECT_NEAR(AggregationEnvelope(100, 0.0, 0.01, 2.0, 1.0, -1.0, 1.0),
              std::sqrt(std::log(400.0) / 100.0), 1e-15);
  EXPECT_NEAR(std::sqrt(std::log(400.0) / 100.0), 0.2448, 1e-4);
  EXPECT_DOUBLE_EQ(AggregationEnvelope(1000000, 1.0, 0.01, 2.0, 1.0, -1.0, 1.0),
                   1.0);
  EXPECT_NEAR(AggregationEnvelope(100, 0.0, 0.01, 2.0, 1.0, -1.0, 1e12),
              std::sqrt(std::log(400.0) / 100.0), 1e-15);
  EXPECT_NEAR(AggregationEnvelope(100, 0.0, 0.5, 2.0, 1.0, -1.0, 1e-3),
              1.0 / (10.0 * 1e-3), 1e-9);
}

TEST(AggregationEnvelopeTest, MonotoneInEachArgument) {
  double previous = 1e300;
  for (int64_t m = 1; m <= 4096; m *= 2) {
    const double h = AggregationEnvelope(m, 0.0, 0.05, 1.01, 10, -10, 0.5);
    EXPECT_LE(h, previous);
    previous = h;
  }
  previous = 1e300;
  for (double e3 = 0.01; e3 < 100; e3 *= 1.7) {
    const double h = AggregationEnvelope(50, 0.0, 0.05, 1.01, 10, -10, e3);
    EXPECT_LE(h, previous);
    previous = h;
  }
  previous = 0.0;
  for (double eta = 0.0; eta <= 0.5; eta += 0.05) {
    const double h = AggregationEnvelope(50, eta, 0.05, 1.01, 10, -10, 0.5);
    EXPECT_GE(h, previous);
    previous = h;
  }
  previous = 0.0;
  for (double width = 0.5; width < 1e6; width *= 3) {
    const double h =
        AggregationEnvelope(50, 0.0, 0.05, 1.01, width / 2, -width / 2, 5.0);
    EXPECT_GE(h, previous);
    previous = h;
  }
}

TEST(SampleComplexityTest, HandEvaluatedInstance) {
  // u - l = e, beta = e / (e - 1): log(u - l) = 1, -log((beta - 1) / beta)
  // = 1, log(4 / 0.04) = log 100; at t = 1 the maximum is 2 + log 100.
  const double e = std::exp(1.0);
  const double beta = e / (e - 1.0);
  EXPECT_EQ(SampleComplexity(1.0, 1.0, 0.04, 0.0, e, beta, 1.0), 7);
  EXPECT_EQ(SampleComplexity(0.5, 1.0, 0.04, 0.0, e, beta, 1.0), 27);
  EXPECT_EQ(static_cast<int64_t>(std::ceil(2.0 + std::log(100.0))), 7);
}

TEST(SampleComplexityTest, LimitsAndScaling) {
  EXPECT_EQ(SampleComplexity(1e9, 1.0, 0.1, -1, 1, 1.1, 1.0), 1);
  // A large K keeps the ceiling from hiding the t^2 law.
  const double k = 1e9;
  const double a =
      static_cast<double>(SampleComplexity(0.3, 2.0, 0.1, -5, 5, 1.2, 0.7, k));
  const double b =
      static_cast<double>(SampleComplexity(0.6, 2.0, 0.1, -5, 5, 1.2, 0.7, k));
  EXPECT_NEAR(a / b, 4.0, 1e-6);
  EXPECT_THROW(SampleComplexity(0.0, 1, 0.1, -1, 1, 1.1, 1), std::invalid_argument);
}

TEST(TrimmedMeanLimitExpTest, MatchesNumericalIntegration) {
  for (int i = 0; i < 12; ++i) {
    const double p = 0.02 + 0.04 * i;
    const double a = -std::log(1.0 - p);
    const double b = -std::log(p);
    const double oracle =
        Simpson([](double x) { return x * std::exp(-x); }, a, b) / (1.0 - 2 * p);
    EXPECT_NEAR(TrimmedMeanLimitExp(p), oracle, 1e-10) << p;
    EXPECT_LT(TrimmedMeanLimitExp(p), 1.0);
  }
  EXPECT_NEAR(TrimmedMeanLimitExp(0.1), 0.83071, 1e-4);
  EXPECT_NEAR(TrimmedMeanLimitExp(1e-9), 1.0, 1e-6);
  EXPECT_THROW(TrimmedMeanLimitExp(0.5), std::invalid_argument);
}

TEST(RecommendBoundsTest, Examples) {
  const auto a = RecommendBounds(100, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(a.lower, -20.0);
  EXPECT_DOUBLE_EQ(a.upper, 20.0);
  const auto b = RecommendBounds(1, 100.0, 1.0);
  EXPECT_DOUBLE_EQ(b.lower, -200.0);
  EXPECT_DOUBLE_EQ(b.upper, 200.0);
  EXPECT_DOUBLE_EQ(RecommendBounds(400, 0.0, 1.0).upper,
                   2.0 * RecommendBounds(100, 0.0, 1.0).upper);
  EXPECT_THROW(RecommendBounds(10, 0.0, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace pmw

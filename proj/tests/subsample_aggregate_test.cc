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

#include "pmw/subsample_aggregate.h"

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace pmw {
namespace {

using ::testing::HasSubstr;

std::vector<Row> GaussianRows(std::size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Row> rows(n);
  for (auto& r : rows) r = {normal(rng)};
  return rows;
}

TEST(MakePlanTest, GroupSizesAndDroppedCounts) {
  RandomStream stream(1, 0);
  auto plan = MakePlan(10, 3, stream);
  EXPECT_EQ(plan.k, 3u);
  EXPECT_EQ(plan.dropped, 1u);
  plan = MakePlan(10, 10, stream);
  EXPECT_EQ(plan.k, 1u);
  EXPECT_EQ(plan.dropped, 0u);
  plan = MakePlan(10, 1, stream);
  EXPECT_EQ(plan.k, 10u);
  EXPECT_EQ(plan.dropped, 0u);
  EXPECT_THROW(MakePlan(10, 11, stream), std::invalid_argument);
  EXPECT_THROW(MakePlan(10, 0, stream), std::invalid_argument);
}

TEST(MakePlanTest, GroupsAreDisjointAndSized) {
  for (std::size_t n : {7u, 64u, 1001u}) {
    for (std::size_t m : {1u, 2u, 5u, 7u}) {
      RandomStream stream(n, m);
      const auto plan = MakePlan(n, m, stream);
      std::set<std::size_t> seen;
      for (std::size_t g = 0; g < plan.m; ++g) {
        EXPECT_EQ(plan.Group(g).size(), plan.k);
        for (std::size_t idx : plan.Group(g)) {
          EXPECT_LT(idx, n);
          EXPECT_TRUE(seen.insert(idx).second) << "index in two groups";
        }
      }
      EXPECT_EQ(seen.size(), m * plan.k);
      EXPECT_EQ(plan.dropped, n - m * plan.k);
      EXPECT_LT(plan.dropped, m);
    }
  }
}

TEST(MakePlanTest, ZeroStreamKeepsOriginalOrder) {
  RandomStream zero = RandomStream::Zero();
  const auto plan = MakePlan(6, 2, zero);
  EXPECT_EQ(plan.order, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
}

TEST(RunSsaTest, SingletonGroupsReproduceGrandMeanUnderZeroNoise) {
  const auto rows = GaussianRows(500, 2);
  RandomStream zero = RandomStream::Zero();
  // C = 0.5 keeps the clip level below 1 / m, so the noise-free searches
  // stop just beyond the sample extremes.
  const PmwAggregator agg{0.5, 0.0, QuantileGridParams::Make(1.001, -50, 50),
                          PrivacyKind::kZcdp, BudgetSplit::kStrict};
  const auto result = RunSsa(std::span<const Row>(rows), MeanStatistic(0),
                             rows.size(), agg, 1.0, zero);
  double sum = 0.0;
  for (std::size_t idx : result.plan.order) sum += rows[idx][0];
  ASSERT_EQ(result.estimates.size(), 1u);
  EXPECT_EQ(result.estimates[0], sum / static_cast<double>(rows.size()));
}

TEST(RunSsaTest, ConstantStatisticUnderZeroNoise) {
  const auto rows = GaussianRows(100, 3);
  const Statistic<Row> constant{
      2, [](std::span<const Row>) { return std::vector<double>{3.5, -1.0}; }};
  RandomStream zero = RandomStream::Zero();
  const auto result = RunSsa(std::span<const Row>(rows), constant, 10,
                             PmwAggregator{}, 1.0, zero);
  EXPECT_EQ(result.estimates, (std::vector<double>{3.5, -1.0}));
}

TEST(RunSsaTest, BudgetSplitsUniformlyOverCoordinates) {
  const auto rows = GaussianRows(600, 4);
  const Statistic<Row> six{6, [](std::span<const Row> g) {
                             std::vector<double> out(6);
                             for (std::size_t j = 0; j < 6; ++j) {
                               out[j] = g[0][0] * static_cast<double>(j);
                             }
                             return out;
                           }};
  RandomStream stream(4, 0);
  const auto result =
      RunSsa(std::span<const Row>(rows), six, 60, PmwAggregator{}, 1.0, stream);
  ASSERT_EQ(result.per_coordinate.size(), 6u);
  double sum = 0.0;
  for (const auto& est : result.per_coordinate) {
    EXPECT_LE(est.total_budget_strict, 1.0 / 6.0 + 1e-15);
    sum += est.total_budget_strict;
  }
  EXPECT_DOUBLE_EQ(result.total_budget, sum);
  EXPECT_NEAR(result.total_budget, 1.0, 1e-12);
}

TEST(RunSsaTest, StatisticFailureNamesGroup) {
  const auto rows = GaussianRows(40, 5);
  int calls = 0;
  const Statistic<Row> flaky{1, [&calls](std::span<const Row>) {
                               if (calls++ == 3) {
                                 throw std::runtime_error("singular");
                               }
                               return std::vector<double>{0.0};
                             }};
  RandomStream stream(5, 0);
  try {
    RunSsa(std::span<const Row>(rows), flaky, 10, PmwAggregator{}, 1.0, stream);
    FAIL() << "expected EstimatorError";
  } catch (const EstimatorError& e) {
    EXPECT_THAT(e.what(), HasSubstr("group 3"));
    EXPECT_THAT(e.what(), HasSubstr("singular"));
  }
}

TEST(RunSsaTest, ArityMismatchAndDegenerateGroupCounts) {
  const auto rows = GaussianRows(40, 6);
  const Statistic<Row> liar{
      2, [](std::span<const Row>) { return std::vector<double>{1.0}; }};
  RandomStream stream(6, 0);
  EXPECT_THROW(RunSsa(std::span<const Row>(rows), liar, 4, PmwAggregator{}, 1.0,
                      stream),
               EstimatorError);
  EXPECT_THROW(RunSsa(std::span<const Row>(rows), MeanStatistic(0), 1,
                      PmwAggregator{}, 1.0, stream),
               std::invalid_argument);
  // The clipped-mean baseline has no quantile search and accepts m = 1.
  EXPECT_NO_THROW(RunSsa(std::span<const Row>(rows), MeanStatistic(0), 1,
                         ClippedMeanAggregator{}, 1.0, stream));
}

TEST(RunSsaTest, WarnsAboutDroppedRecordsAndOutOfBoundsStatistics) {
  const auto rows = GaussianRows(103, 7);
  const Statistic<Row> shifted{
      1, [](std::span<const Row> g) { return std::vector<double>{g[0][0] + 3}; }};
  PmwAggregator agg;
  agg.grid = QuantileGridParams::Make(1.01, -2.0, 2.0);
  RandomStream stream(7, 0);
  const auto result =
      RunSsa(std::span<const Row>(rows), shifted, 10, agg, 1.0, stream);
  EXPECT_EQ(result.plan.dropped, 3u);
  ASSERT_EQ(result.warnings.size(), 2u);
  EXPECT_THAT(result.warnings[0], HasSubstr("3 records dropped"));
  EXPECT_THAT(result.warnings[1], HasSubstr("outside the grid bounds"));
}

TEST(RunSsaTest, SeededRunsReplayAndGroupSizeWrapper) {
  const auto rows = GaussianRows(400, 8);
  RandomStream a(8, 0);
  RandomStream b(8, 0);
  const auto x = RunSsa(std::span<const Row>(rows), MeanStatistic(0), 40,
                        PmwAggregator{}, 1.0, a);
  const auto y = RunSsaWithGroupSize(std::span<const Row>(rows),
                                     MeanStatistic(0), 10, PmwAggregator{},
                                     1.0, b);
  EXPECT_EQ(y.plan.m, 40u);
  EXPECT_EQ(x.estimates, y.estimates);
  EXPECT_THROW(RunSsaWithGroupSize(std::span<const Row>(rows), MeanStatistic(0),
                                   0, PmwAggregator{}, 1.0, b),
               std::invalid_argument);
}

TEST(OlsStatisticTest, RecoversExactLinearModel) {
  std::vector<Row> rows;
  for (int i = 0; i < 12; ++i) {
    const double x1 = i;
    const double x2 = (i * 7) % 5;
    rows.push_back({x1, x2, 1.5 + 2.0 * x1 - 0.5 * x2});
  }
  const auto stat = OlsStatistic(2, {0, 1});
  EXPECT_EQ(stat.arity, 4u);
  const auto out = stat.eval(std::span<const Row>(rows));
  ASSERT_EQ(out.size(), 4u);
  EXPECT_NEAR(out[0], 1.5, 1e-10);
  EXPECT_NEAR(out[1], 2.0, 1e-10);
  EXPECT_NEAR(out[2], -0.5, 1e-10);
  EXPECT_NEAR(out[3], 0.0, 1e-18);
}

TEST(OlsStatisticTest, RejectsUnderdeterminedGroups) {
  const std::vector<Row> rows = {{1, 2, 3}, {2, 3, 4}};
  EXPECT_THROW(OlsStatistic(2, {0, 1}).eval(std::span<const Row>(rows)),
               std::invalid_argument);
}

TEST(ReadCsvTest, ParsesHeaderAndRows) {
  std::istringstream in("a, b\n1,2\n\n3.5,-4\n");
  const auto table = ReadCsv(in);
  EXPECT_EQ(table.columns, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[1], (Row{3.5, -4.0}));
  EXPECT_EQ(table.ColumnIndex("b"), 1u);
  EXPECT_THROW(table.ColumnIndex("c"), std::invalid_argument);
}

TEST(ReadCsvTest, ReportsBadLines) {
  std::istringstream short_row("a,b\n1\n");
  try {
    ReadCsv(short_row);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_THAT(e.what(), HasSubstr("line 2"));
  }
  std::istringstream bad_number("a\nx\n");
  EXPECT_THROW(ReadCsv(bad_number), std::invalid_argument);
}

TEST(LongitudinalDemoTest, RegressionOnDemoDataRecoversCoefficients) {
  RandomStream stream(9, 0);
  const auto table = MakeLongitudinalDemo(2000, 5, stream);
  EXPECT_EQ(table.columns, (std::vector<std::string>{"subject", "time", "x1",
                                                     "x2", "x3", "y"}));
  ASSERT_EQ(table.rows.size(), 10000u);
  const auto stat =
      OlsStatistic(table.ColumnIndex("y"), {1, 2, 3, 4});
  const auto coef = stat.eval(std::span<const Row>(table.rows));
  EXPECT_NEAR(coef[0], 1.0, 0.1);
  EXPECT_NEAR(coef[1], 0.5, 0.05);
  EXPECT_NEAR(coef[2], 2.0, 0.05);
  EXPECT_NEAR(coef[3], -1.0, 0.1);
  EXPECT_NEAR(coef[4], 0.25, 0.15);
  EXPECT_NEAR(coef[5], 2.0, 0.15);  // var(b) + var(e)
}

}  // namespace
}  // namespace pmw

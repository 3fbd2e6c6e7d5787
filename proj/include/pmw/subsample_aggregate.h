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

// Subsample-and-aggregate: split records into m disjoint groups, evaluate a
// statistic on each group and privately aggregate every output coordinate.

#ifndef PMW_SUBSAMPLE_AGGREGATE_H_
#define PMW_SUBSAMPLE_AGGREGATE_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pmw/baselines.h"
#include "pmw/noise.h"
#include "pmw/pmw_mean.h"
#include "pmw/private_quantile.h"

namespace pmw {

struct GroupPlan {
  std::size_t n_records = 0;
  std::size_t m = 0;  // groups
  std::size_t k = 0;  // group size, floor(N / m)
  std::size_t dropped = 0;
  // Shuffled record indices; group g owns order[g k, (g + 1) k).
  std::vector<std::size_t> order;

  std::span<const std::size_t> Group(std::size_t g) const;
};

// Uniform shuffle of 0..N-1 cut into m contiguous blocks of k = floor(N/m).
// The N - m k leftovers are dropped. Throws unless 1 <= m <= N.
GroupPlan MakePlan(std::size_t n_records, std::size_t m, RandomStream& stream);

template <typename Record>
struct Statistic {
  std::size_t arity = 1;
  std::function<std::vector<double>(std::span<const Record>)> eval;
};

// Coordinate-wise PMW mean with full-data reuse.
struct PmwAggregator {
  double c = 1.0;
  double eta = 0.0;
  QuantileGridParams grid = QuantileGridParams::Make(1.001, -50.0, 50.0);
  PrivacyKind kind = PrivacyKind::kZcdp;
  BudgetSplit split = BudgetSplit::kStrict;
};

struct ClippedMeanAggregator {
  double lower = -50.0;
  double upper = 50.0;
  PrivacyKind kind = PrivacyKind::kZcdp;
};

using AggregatorConfig = std::variant<PmwAggregator, ClippedMeanAggregator>;

struct SsaResult {
  std::vector<double> estimates;
  std::vector<PrivateEstimate> per_coordinate;
  GroupPlan plan;
  // Sum of the per-coordinate strict totals.
  double total_budget = 0.0;
  std::vector<std::string> warnings;
};

// Aggregates a precomputed m x d table of group statistics. Each coordinate
// gets total_budget / d and its own child stream stream.Split(j + 1).
SsaResult AggregateGroupStatistics(
    const std::vector<std::vector<double>>& group_stats, std::size_t arity,
    const AggregatorConfig& aggregator, double total_budget, GroupPlan plan,
    const RandomStream& stream);

template <typename Record>
SsaResult RunSsa(std::span<const Record> records, const Statistic<Record>& stat,
                 std::size_t m, const AggregatorConfig& aggregator,
                 double total_budget, RandomStream& stream) {
  if (std::holds_alternative<PmwAggregator>(aggregator) && m < 2) {
    throw std::invalid_argument("PMW aggregation needs m >= 2 groups");
  }
  if (stat.arity == 0) throw std::invalid_argument("statistic arity must be > 0");
  GroupPlan plan = MakePlan(records.size(), m, stream);
  std::vector<std::vector<double>> group_stats;
  group_stats.reserve(plan.m);
  std::vector<Record> group;
  for (std::size_t g = 0; g < plan.m; ++g) {
    group.clear();
    for (std::size_t idx : plan.Group(g)) group.push_back(records[idx]);
    std::vector<double> out;
    try {
      out = stat.eval(std::span<const Record>(group));
    } catch (const std::exception& e) {
      throw EstimatorError("statistic failed on group " + std::to_string(g) +
                           ": " + e.what());
    }
    if (out.size() != stat.arity) {
      throw EstimatorError("statistic on group " + std::to_string(g) +
                           " returned " + std::to_string(out.size()) +
                           " values, expected " + std::to_string(stat.arity));
    }
    group_stats.push_back(std::move(out));
  }
  return AggregateGroupStatistics(group_stats, stat.arity, aggregator,
                                  total_budget, std::move(plan), stream);
}

// Takes the group size k instead of m; m = floor(N / k).
template <typename Record>
SsaResult RunSsaWithGroupSize(std::span<const Record> records,
                              const Statistic<Record>& stat, std::size_t k,
                              const AggregatorConfig& aggregator,
                              double total_budget, RandomStream& stream) {
  if (k == 0 || k > records.size()) {
    throw std::invalid_argument("group size must lie in [1, N]");
  }
  return RunSsa(records, stat, records.size() / k, aggregator, total_budget,
                stream);
}

// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Throws std::invalid_argument for unknown names.
  std::size_t ColumnIndex(const std::string& name) const;
};

CsvTable ReadCsv(std::istream& in);

using Row = std::vector<double>;

// Sample mean of one column.
Statistic<Row> MeanStatistic(std::size_t column);

// Ordinary least squares of column y on an intercept plus x_columns. Output:
// intercept, one slope per x column, residual variance (divisor k - p).
Statistic<Row> OlsStatistic(std::size_t y_column,
                            std::vector<std::size_t> x_columns);

// Synthetic repeated-measures data for the regression demo. Columns:
// subject, time, x1, x2, x3, y with
//   y = 1 + 0.5 time + 2 x1 - x2 + 0.25 x3 + b_subject + e,
// b ~ N(0, 1), e ~ N(0, 1), x1 ~ N(0, 1), x2 ~ Bernoulli(1/2),
// x3 ~ U(0, 1), time = 0..visits-1.
CsvTable MakeLongitudinalDemo(std::size_t subjects, std::size_t visits,
                              RandomStream& stream);

}  // namespace pmw

#endif  // PMW_SUBSAMPLE_AGGREGATE_H_

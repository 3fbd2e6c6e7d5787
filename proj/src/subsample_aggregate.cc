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

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "pmw/empirical.h"

namespace pmw {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::span<const std::size_t> GroupPlan::Group(std::size_t g) const {
  if (g >= m) throw std::out_of_range("group index out of range");
  return std::span<const std::size_t>(order).subspan(g * k, k);
}

GroupPlan MakePlan(std::size_t n_records, std::size_t m, RandomStream& stream) {
  if (m < 1 || m > n_records) {
    throw std::invalid_argument("number of groups must lie in [1, N]");
  }
  GroupPlan plan;
  plan.n_records = n_records;
  plan.m = m;
  plan.k = n_records / m;
  plan.dropped = n_records - m * plan.k;
  plan.order.resize(n_records);
  std::iota(plan.order.begin(), plan.order.end(), 0);
  for (std::size_t i = n_records - 1; i > 0; --i) {
    std::swap(plan.order[i], plan.order[stream.NextIndex(i + 1)]);
  }
  std::vector<bool> seen(n_records, false);
  for (std::size_t idx : plan.order) {
    if (idx >= n_records || seen[idx]) {
      throw std::logic_error("group plan is not a permutation");
    }
    seen[idx] = true;
  }
  return plan;
}

SsaResult AggregateGroupStatistics(
    const std::vector<std::vector<double>>& group_stats, std::size_t arity,
    const AggregatorConfig& aggregator, double total_budget, GroupPlan plan,
    const RandomStream& stream) {
  if (!(total_budget > 0.0) || !std::isfinite(total_budget)) {
    throw std::invalid_argument("total privacy budget must be positive");
  }
  if (group_stats.empty()) throw std::invalid_argument("empty input");
  const double per_coordinate = total_budget / static_cast<double>(arity);

  SsaResult result;
  result.plan = std::move(plan);
  if (result.plan.dropped > 0) {
    result.warnings.push_back(std::to_string(result.plan.dropped) +
                              " records dropped (N not divisible by m)");
  }

  std::vector<double> column(group_stats.size());
  for (std::size_t j = 0; j < arity; ++j) {
    for (std::size_t g = 0; g < group_stats.size(); ++g) {
      column[g] = group_stats[g].at(j);
    }
    const Dataset data(column);
    RandomStream child = stream.Split(j + 1);

    PrivateEstimate est;
    if (const auto* pmw = std::get_if<PmwAggregator>(&aggregator)) {
      const auto [lo, hi] =
          std::minmax_element(column.begin(), column.end());
      if (!(pmw->grid.lower < *lo && *hi < pmw->grid.upper)) {
        result.warnings.push_back("coordinate " + std::to_string(j) +
                                  ": group statistics fall outside the grid "
                                  "bounds (lower, upper)");
      }
      est = PmwMeanPractical(data, pmw->c, pmw->eta, pmw->grid,
                             per_coordinate, pmw->kind, pmw->split, child);
    } else {
      const auto& clipped = std::get<ClippedMeanAggregator>(aggregator);
      est = DpClippedMean(
          data,
          FixedBoundsConfig{clipped.lower, clipped.upper, per_coordinate,
                            clipped.kind},
          child);
    }
    result.total_budget += est.total_budget_strict;
    result.estimates.push_back(est.value);
    result.per_coordinate.push_back(std::move(est));
  }
  return result;
}

std::size_t CsvTable::ColumnIndex(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw std::invalid_argument("unknown column '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable ReadCsv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = SplitFields(trimmed);
    if (table.columns.empty()) {
      for (auto f : fields) table.columns.emplace_back(f);
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected " +
                                  std::to_string(table.columns.size()) +
                                  " fields");
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::string_view f = fields[i];
      if (!f.empty() && f.front() == '+') f.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[i]);
      if (ec != std::errc() || ptr != f.data() + f.size() ||
          !std::isfinite(row[i])) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": cannot parse field '" +
                                    std::string(fields[i]) + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw std::invalid_argument("empty input");
  return table;
}

Statistic<Row> MeanStatistic(std::size_t column) {
  return {1, [column](std::span<const Row> group) {
            double sum = 0.0;
            for (const Row& r : group) sum += r.at(column);
            return std::vector<double>{sum / static_cast<double>(group.size())};
          }};
}

Statistic<Row> OlsStatistic(std::size_t y_column,
                            std::vector<std::size_t> x_columns) {
  const std::size_t p = x_columns.size() + 1;
  return {p + 1, [y_column, x_columns = std::move(x_columns),
                  p](std::span<const Row> group) {
            const auto k = static_cast<Eigen::Index>(group.size());
            if (group.size() <= p) {
              throw std::invalid_argument(
                  "OLS needs more rows than coefficients");
            }
            Eigen::MatrixXd x(k, static_cast<Eigen::Index>(p));
            Eigen::VectorXd y(k);
            for (Eigen::Index i = 0; i < k; ++i) {
              const Row& r = group[static_cast<std::size_t>(i)];
              x(i, 0) = 1.0;
              for (std::size_t j = 0; j < x_columns.size(); ++j) {
                x(i, static_cast<Eigen::Index>(j + 1)) = r.at(x_columns[j]);
              }
              y(i) = r.at(y_column);
            }
            const auto qr = x.colPivHouseholderQr();
            if (qr.rank() < static_cast<Eigen::Index>(p)) {
              throw std::invalid_argument("design matrix is rank deficient");
            }
            const Eigen::VectorXd beta = qr.solve(y);
            const double rss = (y - x * beta).squaredNorm();
            std::vector<double> out(beta.data(), beta.data() + beta.size());
            out.push_back(rss / static_cast<double>(group.size() - p));
            return out;
          }};
}

CsvTable MakeLongitudinalDemo(std::size_t subjects, std::size_t visits,
                              RandomStream& stream) {
  if (subjects == 0 || visits == 0) {
    throw std::invalid_argument("demo needs at least one subject and visit");
  }
  CsvTable table;
  table.columns = {"subject", "time", "x1", "x2", "x3", "y"};
  table.rows.reserve(subjects * visits);
  for (std::size_t s = 0; s < subjects; ++s) {
    const double intercept = Sample(NoiseKind::kStandardGaussian, stream);
    for (std::size_t t = 0; t < visits; ++t) {
      const double time = static_cast<double>(t);
      const double x1 = Sample(NoiseKind::kStandardGaussian, stream);
      const double x2 = stream.NextUniform() < 0.5 ? 1.0 : 0.0;
      const double x3 = stream.NextUniform();
      const double e = Sample(NoiseKind::kStandardGaussian, stream);
      const double y =
          1.0 + 0.5 * time + 2.0 * x1 - x2 + 0.25 * x3 + intercept + e;
      table.rows.push_back({static_cast<double>(s), time, x1, x2, x3, y});
    }
  }
  return table;
}

}  // namespace pmw

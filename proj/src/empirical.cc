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

#include "pmw/empirical.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pmw {
namespace {

void RequireNonEmpty(const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("empty input");
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("dataset values must be finite");
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

Dataset Dataset::Negated() const {
  std::vector<double> neg(values_.size());
  std::transform(values_.begin(), values_.end(), neg.begin(),
                 [](double v) { return -v; });
  return Dataset(std::move(neg));
}

ClipInterval ClipInterval::Make(double lo, double hi) {
  if (!(lo <= hi)) {
    throw std::invalid_argument("clip interval requires lo <= hi");
  }
  return ClipInterval{lo, hi};
}

double EmpiricalCdf(const Dataset& data, double x) {
  RequireNonEmpty(data);
  const auto s = data.sorted();
  const auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

std::size_t QuantileRank(std::size_t n, double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1]");
  }
  const double target = q * static_cast<double>(n);
  const double nearest = std::round(target);
  double rank = std::abs(target - nearest) <= 1e-9 ? nearest
                                                   : std::ceil(target);
  rank = std::clamp(rank, 1.0, static_cast<double>(n));
  return static_cast<std::size_t>(rank);
}

double EmpiricalQuantile(const Dataset& data, double q) {
  RequireNonEmpty(data);
  return data.sorted()[QuantileRank(data.size(), q) - 1];
}

double Clip(double x, const ClipInterval& iv) {
  if (x < iv.lo) return iv.lo;
  if (x > iv.hi) return iv.hi;
  return x;
}

double SampleMean(const Dataset& data) {
  RequireNonEmpty(data);
  double sum = 0.0;
  for (double v : data.values()) sum += v;
  return sum / static_cast<double>(data.size());
}

double ClippedMean(const Dataset& data, const ClipInterval& iv) {
  RequireNonEmpty(data);
  double sum = 0.0;
  for (double v : data.values()) sum += Clip(v, iv);
  return sum / static_cast<double>(data.size());
}

double LmWinsorizedMean(const Dataset& estimation_half,
                        const Dataset& quantile_half, double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("clip proportion p must lie in (0, 1/2)");
  }
  RequireNonEmpty(estimation_half);
  RequireNonEmpty(quantile_half);
  const ClipInterval iv = ClipInterval::Make(
      EmpiricalQuantile(quantile_half, p),
      EmpiricalQuantile(quantile_half, 1.0 - p));
  return ClippedMean(estimation_half, iv);
}

double TrimmedMean(const Dataset& data, std::size_t m) {
  if (2 * m >= data.size()) {
    throw std::invalid_argument("trimmed mean requires 2m < n");
  }
  const auto s = data.sorted();
  double sum = 0.0;
  for (std::size_t i = m; i < s.size() - m; ++i) sum += s[i];
  return sum / static_cast<double>(s.size() - 2 * m);
}

Dataset ReadDataset(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view field = Trim(line);
    if (field.empty() || field.front() == '#') continue;
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() ||
        !std::isfinite(v)) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": cannot parse '" + std::string(field) +
                                  "' as a finite number");
    }
    values.push_back(v);
  }
  return Dataset(std::move(values));
}

}  // namespace pmw

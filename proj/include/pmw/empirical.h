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

#ifndef PMW_EMPIRICAL_H_
#define PMW_EMPIRICAL_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <vector>

namespace pmw {

// Immutable sample of finite reals with a cached ascending copy.
class Dataset {
 public:
  Dataset() = default;
  // Throws std::invalid_argument on NaN or infinity.
  explicit Dataset(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  // Original order.
  std::span<const double> values() const { return values_; }
  // Non-decreasing order.
  std::span<const double> sorted() const { return sorted_; }

  Dataset Negated() const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

struct ClipInterval {
  double lo = 0.0;
  double hi = 0.0;

  // Throws std::invalid_argument unless lo <= hi.
  static ClipInterval Make(double lo, double hi);
  double width() const { return hi - lo; }
};

// #{x_i <= x} / n.
double EmpiricalCdf(const Dataset& data, double x);

// Left-continuous quantile: the ceil(q n)-th order statistic, 0 < q <= 1.
// q n within 1e-9 of an integer is snapped to it so that decimal inputs like
// q = 0.3, n = 10 select the 3rd order statistic.
double EmpiricalQuantile(const Dataset& data, double q);

// 1-based order-statistic rank used by EmpiricalQuantile.
std::size_t QuantileRank(std::size_t n, double q);

double Clip(double x, const ClipInterval& iv);

double SampleMean(const Dataset& data);

// Mean of the data projected onto iv, summed in storage order.
double ClippedMean(const Dataset& data, const ClipInterval& iv);

// Lugosi-Mendelson winsorized mean: clip estimation_half to
// [xi_p, xi_{1-p}] of quantile_half and average. 0 < p < 1/2.
double LmWinsorizedMean(const Dataset& estimation_half,
                        const Dataset& quantile_half, double p);

// Drops the m smallest and m largest values and averages the rest.
double TrimmedMean(const Dataset& data, std::size_t m);

// Reads one number per line. Blank lines and lines starting with '#' are
// skipped. Throws std::invalid_argument naming the 1-based line on a parse
// failure or a non-finite value.
Dataset ReadDataset(std::istream& in);

}  // namespace pmw

#endif  // PMW_EMPIRICAL_H_

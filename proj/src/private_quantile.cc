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

#include "pmw/private_quantile.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pmw {

PrivacyKind ParsePrivacyKind(std::string_view name) {
  if (name == "pdp") return PrivacyKind::kPure;
  if (name == "zcdp") return PrivacyKind::kZcdp;
  throw std::invalid_argument("privacy kind must be 'pdp' or 'zcdp', got '" +
                              std::string(name) + "'");
}

std::string_view PrivacyKindName(PrivacyKind kind) {
  return kind == PrivacyKind::kPure ? "pdp" : "zcdp";
}

QuantileGridParams QuantileGridParams::Make(double beta, double lower,
                                            double upper) {
  QuantileGridParams grid{beta, lower, upper, 0};
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("grid beta must be > 1");
  }
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw std::invalid_argument("grid bounds require lower < upper");
  }
  grid.max_steps = 2 * (grid.MinimumSteps() - 64) + 64;
  return grid;
}

int64_t QuantileGridParams::MinimumSteps() const {
  return static_cast<int64_t>(
             std::ceil(std::log(upper - lower + 1.0) / std::log(beta))) +
         64;
}

void QuantileGridParams::Validate() const {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("grid beta must be > 1");
  }
  if (!(lower < upper)) {
    throw std::invalid_argument("grid bounds require lower < upper");
  }
  if (max_steps < MinimumSteps()) {
    throw std::invalid_argument(
        "grid max_steps must be at least " + std::to_string(MinimumSteps()));
  }
}

double QuantileGridParams::Point(int64_t step, double anchor) const {
  return std::pow(beta, static_cast<double>(step)) + anchor - 1.0;
}

void QuantileBudget::Validate() const {
  if (!(b1 > 0.0) || !(b2 > 0.0) || !std::isfinite(b1) ||
      !std::isfinite(b2)) {
    throw std::invalid_argument("quantile budgets must be positive");
  }
}

namespace {

PrivateQuantileResult Scan(const Dataset& data, double q,
                           const QuantileBudget& budget,
                           const QuantileGridParams& grid, double anchor,
                           RandomStream& stream) {
  const bool pure = budget.kind == PrivacyKind::kPure;
  const NoiseKind kind =
      pure ? NoiseKind::kStandardExponential : NoiseKind::kStandardGaussian;
  const double n = static_cast<double>(data.size());
  const double s1 = pure ? budget.b1 : std::sqrt(budget.b1);
  const double s2 = pure ? budget.b2 : std::sqrt(budget.b2);

  const double q_hat = q + Sample(kind, stream) / (n * s1);

  // Grid points increase with i, so #{x <= g_i} only moves forward.
  const auto sorted = data.sorted();
  std::size_t below = 0;
  PrivateQuantileResult result;
  for (int64_t i = 1; i <= grid.max_steps; ++i) {
    const double point = grid.Point(i, anchor);
    while (below < sorted.size() && sorted[below] <= point) ++below;
    const double cdf = static_cast<double>(below) / n;
    result.value = point;
    result.steps_taken = i;
    if (cdf + Sample(kind, stream) / (n * s2) > q_hat) return result;
  }
  result.hit_cap = true;
  return result;
}

}  // namespace

PrivateQuantileResult PrivateUpperQuantile(const Dataset& data, double q,
                                           const QuantileBudget& budget,
                                           const QuantileGridParams& grid,
                                           RandomStream& stream) {
  if (!(q >= 0.5 && q <= 1.0)) {
    throw std::invalid_argument("upper quantile level must lie in [1/2, 1]");
  }
  if (data.empty()) throw std::invalid_argument("empty input");
  budget.Validate();
  grid.Validate();
  return Scan(data, q, budget, grid, grid.lower, stream);
}

PrivateQuantileResult PrivateQuantile(const Dataset& data, double q,
                                      const QuantileBudget& budget,
                                      const QuantileGridParams& grid,
                                      RandomStream& stream) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in (0, 1]");
  }
  if (q >= 0.5) return PrivateUpperQuantile(data, q, budget, grid, stream);
  if (data.empty()) throw std::invalid_argument("empty input");
  budget.Validate();
  grid.Validate();
  PrivateQuantileResult result =
      Scan(data.Negated(), 1.0 - q, budget, grid, -grid.upper, stream);
  result.value = -result.value;
  result.negated = true;
  return result;
}

}  // namespace pmw

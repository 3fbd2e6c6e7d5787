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

// Private modified winsorized (PMW) mean.
//
// Two private quantile searches pick a clipping interval
// [xi_p, xi_{1-p}], the data are projected onto it and averaged, and noise
// scaled to the interval width is added. Each quantile search spends
// (b1, b2); the final release spends b3, so the estimate is
// (2 b1 + 2 b2 + b3)-private under basic composition.

#ifndef PMW_PMW_MEAN_H_
#define PMW_PMW_MEAN_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pmw/empirical.h"
#include "pmw/noise.h"
#include "pmw/privacy.h"
#include "pmw/private_quantile.h"

namespace pmw {

struct PrivacyBudget {
  PrivacyKind kind = PrivacyKind::kZcdp;
  double b1 = 0.0;  // target-quantile noise, per search
  double b2 = 0.0;  // per-step noise, per search
  double b3 = 0.0;  // final mean release

  void Validate() const;
  // 2 b1 + 2 b2 + b3.
  double StrictTotal() const { return 2.0 * b1 + 2.0 * b2 + b3; }
  // b1 + b2 + b3, i.e. the split read as if it already summed to the total.
  double LiteralTotal() const { return b1 + b2 + b3; }
};

// How a scalar total is divided between the two quantile searches and the
// release.
//   kLiteral: b1 = b2 = total/4, b3 = total/2. Composes to 1.5 * total.
//   kStrict:  b1 = b2 = total/8, b3 = total/2. Composes to exactly total.
enum class BudgetSplit { kStrict, kLiteral };

BudgetSplit ParseBudgetSplit(std::string_view name);
std::string_view BudgetSplitName(BudgetSplit split);

PrivacyBudget SplitBudget(double total, PrivacyKind kind, BudgetSplit split);

// Clip level from the deviation-bound formula. delta defaults to 1/n.
struct TheoreticalClip {
  double eta = 0.0;
  std::optional<double> delta;
};

// Clip level max(min(C, 0.025 n) / n, eta).
struct PracticalClip {
  double c = 5.0;
  double eta = 0.0;
};

using ClipPolicy = std::variant<TheoreticalClip, PracticalClip>;

struct PrivateEstimate {
  double value = 0.0;
  ClipInterval clip_interval;
  double clip_level = 0.0;
  // Standard deviation multiplier of the release noise: width / (n eps3)
  // or width / (n sqrt(2 rho3)).
  double noise_scale = 0.0;
  // Clipped mean before noise and the noise actually added.
  double clipped_mean = 0.0;
  double noise_term = 0.0;
  double total_budget_strict = 0.0;
  double total_budget_literal = 0.0;
  // Lower then upper search. Absent for fixed-bounds baselines.
  std::optional<std::array<PrivateQuantileResult, 2>> quantile_results;
  std::vector<std::string> warnings;
};

// 16 eta + (112/3) log(32 max(beta (u - l) / (beta - 1), 1) / delta) / n,
// natural log. Requires 4 e^{-n} < delta < 1, beta > 1, upper > lower,
// 0 <= eta <= 1/2.
double ComputeZeta(std::size_t n, double eta, double delta, double lower,
                   double upper, double beta);

// max(min(C, 0.025 n) / n, eta). Requires C > 0 and 0 <= eta < 1/2.
double PracticalClipLevel(std::size_t n, double c, double eta);

// Clip level the policy resolves to for a quantile sample of size n.
double ResolveClipLevel(const ClipPolicy& policy, std::size_t n,
                        const QuantileGridParams& grid);

// Core estimator. Quantiles come from quantile_data, the clipped mean from
// estimation_data; the release uses n = |estimation_data|.
//
// Throws ClipLevelError when a theoretical policy yields zeta >= 1/2 and
// GridExhaustedError when either search hits its step cap. Crossed private
// quantiles are swapped before clipping.
PrivateEstimate PmwMean(const Dataset& estimation_data,
                        const Dataset& quantile_data, const ClipPolicy& policy,
                        const QuantileGridParams& grid,
                        const PrivacyBudget& budget, RandomStream& stream);

// Sample-splitting estimator: shuffle with `stream`, then odd positions form
// the quantile half and even positions the estimation half.
PrivateEstimate PmwMeanSplit(const Dataset& data, const ClipPolicy& policy,
                             const QuantileGridParams& grid,
                             const PrivacyBudget& budget,
                             RandomStream& stream);

// Practical estimator: all data feed both steps.
PrivateEstimate PmwMeanPractical(const Dataset& data, double c, double eta,
                                 const QuantileGridParams& grid,
                                 const PrivacyBudget& budget,
                                 RandomStream& stream);

PrivateEstimate PmwMeanPractical(const Dataset& data, double c, double eta,
                                 const QuantileGridParams& grid, double total,
                                 PrivacyKind kind, BudgetSplit split,
                                 RandomStream& stream);

}  // namespace pmw

#endif  // PMW_PMW_MEAN_H_

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

#include "pmw/pmw_mean.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace pmw {
namespace {

// Budgets at or below this void the deviation bound for the theoretical
// estimator.
constexpr double kMinQuantileBudget = 3.0 / 56.0;
constexpr double kPracticalCapFraction = 0.025;

std::string Describe(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

BudgetSplit ParseBudgetSplit(std::string_view name) {
  if (name == "strict") return BudgetSplit::kStrict;
  if (name == "literal") return BudgetSplit::kLiteral;
  throw std::invalid_argument("budget split must be 'strict' or 'literal'");
}

std::string_view BudgetSplitName(BudgetSplit split) {
  return split == BudgetSplit::kStrict ? "strict" : "literal";
}

void PrivacyBudget::Validate() const {
  for (double b : {b1, b2, b3}) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("privacy budgets must be positive");
    }
  }
}

PrivacyBudget SplitBudget(double total, PrivacyKind kind, BudgetSplit split) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::invalid_argument("total privacy budget must be positive");
  }
  const double quantile_share = split == BudgetSplit::kLiteral ? 4.0 : 8.0;
  return PrivacyBudget{kind, total / quantile_share, total / quantile_share,
                       total / 2.0};
}

double ComputeZeta(std::size_t n, double eta, double delta, double lower,
                   double upper, double beta) {
  if (n == 0) throw std::invalid_argument("zeta requires n >= 1");
  if (!(eta >= 0.0 && eta <= 0.5)) {
    throw std::invalid_argument("eta must lie in [0, 1/2]");
  }
  const double nd = static_cast<double>(n);
  if (!(delta > 4.0 * std::exp(-nd) && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (4 exp(-n), 1)");
  }
  if (!(beta > 1.0)) throw std::invalid_argument("grid beta must be > 1");
  if (!(upper > lower)) throw std::invalid_argument("zeta requires upper > lower");
  const double spread = std::max(beta * (upper - lower) / (beta - 1.0), 1.0);
  return 16.0 * eta + (112.0 / 3.0) * std::log(32.0 * spread / delta) / nd;
}

double PracticalClipLevel(std::size_t n, double c, double eta) {
  if (n == 0) throw std::invalid_argument("clip level requires n >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("C must be positive");
  }
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw std::invalid_argument("eta must lie in [0, 1/2)");
  }
  const double nd = static_cast<double>(n);
  return std::max(std::min(c, kPracticalCapFraction * nd) / nd, eta);
}

double ResolveClipLevel(const ClipPolicy& policy, std::size_t n,
                        const QuantileGridParams& grid) {
  if (const auto* practical = std::get_if<PracticalClip>(&policy)) {
    return PracticalClipLevel(n, practical->c, practical->eta);
  }
  const auto& theory = std::get<TheoreticalClip>(policy);
  const double delta =
      theory.delta.value_or(1.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
  const double zeta =
      ComputeZeta(n, theory.eta, delta, grid.lower, grid.upper, grid.beta);
  if (!(zeta < 0.5)) {
    throw ClipLevelError("clip level zeta = " + Describe(zeta) +
                         " is not below 1/2");
  }
  return zeta;
}

PrivateEstimate PmwMean(const Dataset& estimation_data,
                        const Dataset& quantile_data, const ClipPolicy& policy,
                        const QuantileGridParams& grid,
                        const PrivacyBudget& budget, RandomStream& stream) {
  if (estimation_data.empty() || quantile_data.empty()) {
    throw std::invalid_argument("empty input");
  }
  budget.Validate();
  grid.Validate();

  PrivateEstimate out;
  const bool theoretical = std::holds_alternative<TheoreticalClip>(policy);
  if (budget.b1 <= kMinQuantileBudget || budget.b2 <= kMinQuantileBudget) {
    if (theoretical) {
      throw std::invalid_argument(
          "theoretical estimator requires quantile budgets b1, b2 > 3/56");
    }
    out.warnings.push_back(
        "quantile budgets b1, b2 <= 3/56: outside the range covered by the "
        "deviation bound");
  }

  const double p = ResolveClipLevel(policy, quantile_data.size(), grid);
  out.clip_level = p;

  const QuantileBudget qb{budget.b1, budget.b2, budget.kind};
  const PrivateQuantileResult lo =
      PrivateQuantile(quantile_data, p, qb, grid, stream);
  const PrivateQuantileResult hi =
      PrivateQuantile(quantile_data, 1.0 - p, qb, grid, stream);
  out.quantile_results = std::array<PrivateQuantileResult, 2>{lo, hi};
  if (lo.hit_cap || hi.hit_cap) throw GridExhaustedError();

  // Crossing is post-processing of two released values; swapping costs no
  // budget.
  out.clip_interval = ClipInterval::Make(std::min(lo.value, hi.value),
                                         std::max(lo.value, hi.value));
  if (lo.value > hi.value) {
    out.warnings.push_back("private quantiles crossed; interval swapped");
  }

  const double n = static_cast<double>(estimation_data.size());
  const bool pure = budget.kind == PrivacyKind::kPure;
  out.noise_scale = out.clip_interval.width() /
                    (n * (pure ? budget.b3 : std::sqrt(2.0 * budget.b3)));
  out.clipped_mean = ClippedMean(estimation_data, out.clip_interval);
  const double z = Sample(
      pure ? NoiseKind::kStandardLaplace : NoiseKind::kStandardGaussian,
      stream);
  out.noise_term = z * out.noise_scale;
  out.value = out.clipped_mean + out.noise_term;
  out.total_budget_strict = budget.StrictTotal();
  out.total_budget_literal = budget.LiteralTotal();
  return out;
}

PrivateEstimate PmwMeanSplit(const Dataset& data, const ClipPolicy& policy,
                             const QuantileGridParams& grid,
                             const PrivacyBudget& budget,
                             RandomStream& stream) {
  if (data.size() < 2) {
    throw std::invalid_argument("sample splitting requires n >= 2");
  }
  const auto values = data.values();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[stream.NextIndex(i + 1)]);
  }
  std::vector<double> estimation;
  std::vector<double> quantile;
  estimation.reserve(values.size() / 2 + 1);
  quantile.reserve(values.size() / 2 + 1);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    // 1-based position: odd -> quantile half, even -> estimation half.
    (pos % 2 == 0 ? quantile : estimation).push_back(values[order[pos]]);
  }
  return PmwMean(Dataset(std::move(estimation)), Dataset(std::move(quantile)),
                 policy, grid, budget, stream);
}

PrivateEstimate PmwMeanPractical(const Dataset& data, double c, double eta,
                                 const QuantileGridParams& grid,
                                 const PrivacyBudget& budget,
                                 RandomStream& stream) {
  return PmwMean(data, data, PracticalClip{c, eta}, grid, budget, stream);
}

PrivateEstimate PmwMeanPractical(const Dataset& data, double c, double eta,
                                 const QuantileGridParams& grid, double total,
                                 PrivacyKind kind, BudgetSplit split,
                                 RandomStream& stream) {
  return PmwMeanPractical(data, c, eta, grid, SplitBudget(total, kind, split),
                          stream);
}

}  // namespace pmw

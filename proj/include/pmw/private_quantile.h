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

#ifndef PMW_PRIVATE_QUANTILE_H_
#define PMW_PRIVATE_QUANTILE_H_

#include <cstdint>

#include "pmw/empirical.h"
#include "pmw/noise.h"
#include "pmw/privacy.h"

namespace pmw {

// Geometric search grid beta^i + lower - 1, i = 1, 2, ...
//
// `lower` anchors searches for upper quantiles (q >= 1/2); `upper` anchors
// the negated search used for lower quantiles.
struct QuantileGridParams {
  double beta = 1.001;
  double lower = -50.0;
  double upper = 50.0;
  int64_t max_steps = 0;

  // Validates beta > 1, lower < upper and picks max_steps as twice the number
  // of steps needed to cross [lower, upper] plus 64.
  static QuantileGridParams Make(double beta, double lower, double upper);

  // ceil(log(upper - lower + 1) / log(beta)) + 64.
  int64_t MinimumSteps() const;

  // Throws std::invalid_argument when beta <= 1, lower >= upper or
  // max_steps is below MinimumSteps().
  void Validate() const;

  // beta^step + anchor - 1.
  double Point(int64_t step, double anchor) const;
};

// Budgets of the target-quantile noise (b1) and the per-step noise (b2).
// epsilons for kPure, rhos for kZcdp. The search is (b1 + b2)-private.
struct QuantileBudget {
  double b1 = 0.0;
  double b2 = 0.0;
  PrivacyKind kind = PrivacyKind::kZcdp;

  void Validate() const;
};

struct PrivateQuantileResult {
  double value = 0.0;
  int64_t steps_taken = 0;
  bool hit_cap = false;
  bool negated = false;
};

// Upper-quantile scan, 1/2 <= q <= 1. Draws q_hat = q + V / (n s1), then
// returns the first grid point g_i (i >= 1) with
// F_n(g_i) + V_i / (n s2) > q_hat, where s = epsilon with exponential
// V's (kPure) or s = sqrt(rho) with Gaussian V's (kZcdp). On reaching
// grid.max_steps the last point is returned with hit_cap set.
PrivateQuantileResult PrivateUpperQuantile(const Dataset& data, double q,
                                           const QuantileBudget& budget,
                                           const QuantileGridParams& grid,
                                           RandomStream& stream);

// 0 < q <= 1. Lower quantiles run the upper scan on the negated data at
// level 1 - q anchored at -grid.upper, then negate the result.
PrivateQuantileResult PrivateQuantile(const Dataset& data, double q,
                                      const QuantileBudget& budget,
                                      const QuantileGridParams& grid,
                                      RandomStream& stream);

}  // namespace pmw

#endif  // PMW_PRIVATE_QUANTILE_H_

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

// Closed-form evaluators for the deviation bounds, clip-level conditions and
// limits that the estimators are tested against. Universal constants the
// theory leaves unspecified are parameters defaulting to 1.

#ifndef PMW_THEORY_BOUNDS_H_
#define PMW_THEORY_BOUNDS_H_

#include <cstdint>
#include <functional>
#include <string>

namespace pmw {

// Population law known in closed form.
struct DistributionOracle {
  std::string name;
  std::function<double(double)> quantile;  // xi_q on (0, 1), non-decreasing
  double mean = 0.0;
  double std = 1.0;

  static DistributionOracle Uniform(double a = 0.0, double b = 1.0);
  static DistributionOracle Exponential(double rate = 1.0);
  static DistributionOracle Gaussian(double mu = 0.0, double sigma = 1.0);
  // df > 2 so the variance is finite.
  static DistributionOracle StudentT(double df);
};

// Grid-coarseness limit b_n:
//   min((xi_{5z/4} - xi_{3z/4}) / (u - xi_{5z/4} + 1),
//       (xi_{1-3z/4} - xi_{1-5z/4}) / (xi_{1-5z/4} - l + 1)).
// Requires 0 < 5 zeta / 4 < 1/2, lower <= xi_{5z/4}, upper >= xi_{1-5z/4};
// throws std::invalid_argument naming the violated inequality.
double GridCoarsenessLimit(const DistributionOracle& oracle, double zeta,
                           double lower, double upper);

// Subsample-and-aggregate envelope
//   max(sqrt(eta), sqrt(log(max(beta (u - l) / (beta - 1), 4) / delta) / m),
//       1 / (sqrt(m) e3)).
// Pass sqrt(rho3) as e3 for zCDP.
double AggregationEnvelope(int64_t m, double eta, double delta, double beta,
                           double upper, double lower, double e3);

// ceil(K max(sigma^2 (log(u - l) - log((beta - 1) / beta) + log(4 / delta))
//            / t^2, 1 / (t^2 e3))), at least 1.
int64_t SampleComplexity(double t, double sigma, double delta, double lower,
                         double upper, double beta, double e3,
                         double k_constant = 1.0);

// Probability limit of the symmetric trimmed mean of Exp(1) with m/n -> p:
//   E(X | X in [a, b]) = ((a + 1) e^{-a} - (b + 1) e^{-b}) / (1 - 2p),
// a = -log(1 - p), b = -log(p). 0 < p < 1/2.
double TrimmedMeanLimitExp(double p);

struct SuggestedBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// u = margin * max(sqrt(n sigma0), |mu0|), l = -u.
SuggestedBounds RecommendBounds(int64_t n, double mu0, double sigma0,
                                double margin = 2.0);

}  // namespace pmw

#endif  // PMW_THEORY_BOUNDS_H_

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

#include "pmw/theory_bounds.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

namespace pmw {

DistributionOracle DistributionOracle::Uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform requires a < b");
  return {"uniform", [a, b](double q) { return a + q * (b - a); },
          (a + b) / 2.0, (b - a) / std::sqrt(12.0)};
}

DistributionOracle DistributionOracle::Exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
  return {"exponential", [rate](double q) { return -std::log1p(-q) / rate; },
          1.0 / rate, 1.0 / rate};
}

DistributionOracle DistributionOracle::Gaussian(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
  return {"gaussian",
          [mu, sigma](double q) {
            return mu - sigma * std::sqrt(2.0) * boost::math::erfc_inv(2.0 * q);
          },
          mu, sigma};
}

DistributionOracle DistributionOracle::StudentT(double df) {
  if (!(df > 2.0)) {
    throw std::invalid_argument("student t requires df > 2 for finite variance");
  }
  boost::math::students_t_distribution<double> dist(df);
  return {"student_t",
          [dist](double q) { return boost::math::quantile(dist, q); }, 0.0,
          std::sqrt(df / (df - 2.0))};
}

double GridCoarsenessLimit(const DistributionOracle& oracle, double zeta,
                           double lower, double upper) {
  const double outer = 5.0 * zeta / 4.0;
  const double inner = 3.0 * zeta / 4.0;
  if (!(outer > 0.0 && outer < 0.5)) {
    throw std::invalid_argument("requires 0 < 5 zeta / 4 < 1/2");
  }
  const double lo_outer = oracle.quantile(outer);
  const double lo_inner = oracle.quantile(inner);
  const double hi_outer = oracle.quantile(1.0 - outer);
  const double hi_inner = oracle.quantile(1.0 - inner);
  if (!(lower <= lo_outer)) {
    throw std::invalid_argument("requires lower <= xi_{5 zeta / 4}");
  }
  if (!(upper >= hi_outer)) {
    throw std::invalid_argument("requires upper >= xi_{1 - 5 zeta / 4}");
  }
  return std::min((lo_outer - lo_inner) / (upper - lo_outer + 1.0),
                  (hi_inner - hi_outer) / (hi_outer - lower + 1.0));
}

double AggregationEnvelope(int64_t m, double eta, double delta, double beta,
                           double upper, double lower, double e3) {
  if (m < 1) throw std::invalid_argument("envelope requires m >= 1");
  if (!(beta > 1.0)) throw std::invalid_argument("envelope requires beta > 1");
  if (!(upper > lower)) throw std::invalid_argument("envelope requires upper > lower");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("envelope requires 0 < delta < 1");
  }
  if (!(eta >= 0.0)) throw std::invalid_argument("envelope requires eta >= 0");
  if (!(e3 > 0.0)) throw std::invalid_argument("envelope requires e3 > 0");
  const double md = static_cast<double>(m);
  const double spread = std::max(beta * (upper - lower) / (beta - 1.0), 4.0);
  return std::max({std::sqrt(eta), std::sqrt(std::log(spread / delta) / md),
                   1.0 / (std::sqrt(md) * e3)});
}

int64_t SampleComplexity(double t, double sigma, double delta, double lower,
                         double upper, double beta, double e3,
                         double k_constant) {
  if (!(t > 0.0) || !(sigma > 0.0) || !(e3 > 0.0) || !(k_constant > 0.0)) {
    throw std::invalid_argument("t, sigma, e3 and K must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("requires 0 < delta < 1");
  }
  if (!(beta > 1.0) || !(upper > lower)) {
    throw std::invalid_argument("requires beta > 1 and upper > lower");
  }
  const double log_term = std::log(upper - lower) -
                          std::log((beta - 1.0) / beta) + std::log(4.0 / delta);
  const double bound =
      k_constant * std::max(sigma * sigma * log_term / (t * t),
                            1.0 / (t * t * e3));
  if (!std::isfinite(bound)) throw std::overflow_error("sample size overflow");
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(bound)));
}

double TrimmedMeanLimitExp(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("trimming fraction must lie in (0, 1/2)");
  }
  const double a = -std::log1p(-p);
  const double b = -std::log(p);
  return ((a + 1.0) * std::exp(-a) - (b + 1.0) * std::exp(-b)) / (1.0 - 2.0 * p);
}

SuggestedBounds RecommendBounds(int64_t n, double mu0, double sigma0,
                                double margin) {
  if (n < 1) throw std::invalid_argument("requires n >= 1");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("requires sigma0 > 0");
  if (!(margin > 0.0)) throw std::invalid_argument("requires margin > 0");
  const double u =
      margin * std::max(std::sqrt(static_cast<double>(n) * sigma0),
                        std::abs(mu0));
  return {-u, u};
}

}  // namespace pmw

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

#include "pmw/baselines.h"

#include <cmath>
#include <stdexcept>

namespace pmw {

void FixedBoundsConfig::Validate() const {
  if (!(lower < upper)) {
    throw std::invalid_argument("fixed bounds require lower < upper");
  }
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("privacy budget must be positive");
  }
}

double FixedBoundsConfig::NoiseScale(std::size_t n) const {
  const double denom = kind == PrivacyKind::kPure ? budget
                                                  : std::sqrt(2.0 * budget);
  return (upper - lower) / (static_cast<double>(n) * denom);
}

PrivateEstimate DpClippedMean(const Dataset& data, const FixedBoundsConfig& cfg,
                              RandomStream& stream) {
  cfg.Validate();
  if (data.empty()) throw std::invalid_argument("empty input");
  PrivateEstimate out;
  out.clip_interval = ClipInterval::Make(cfg.lower, cfg.upper);
  out.noise_scale = cfg.NoiseScale(data.size());
  out.clipped_mean = ClippedMean(data, out.clip_interval);
  const double z = Sample(cfg.kind == PrivacyKind::kPure
                              ? NoiseKind::kStandardLaplace
                              : NoiseKind::kStandardGaussian,
                          stream);
  out.noise_term = z * out.noise_scale;
  out.value = out.clipped_mean + out.noise_term;
  out.total_budget_strict = cfg.budget;
  out.total_budget_literal = cfg.budget;
  return out;
}

}  // namespace pmw

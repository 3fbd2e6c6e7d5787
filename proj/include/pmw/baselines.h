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

#ifndef PMW_BASELINES_H_
#define PMW_BASELINES_H_

#include "pmw/empirical.h"
#include "pmw/noise.h"
#include "pmw/pmw_mean.h"
#include "pmw/privacy.h"

namespace pmw {

// Clipped mean over fixed, data-independent bounds.
struct FixedBoundsConfig {
  double lower = -50.0;
  double upper = 50.0;
  double budget = 1.0;  // epsilon or rho, spent entirely on the release
  PrivacyKind kind = PrivacyKind::kZcdp;

  void Validate() const;
  // Release noise multiplier: (upper - lower) / (n eps) or
  // (upper - lower) / (n sqrt(2 rho)).
  double NoiseScale(std::size_t n) const;
};

// Mean of the data clipped to [lower, upper] plus Laplace (pure) or
// Gaussian (zCDP) noise scaled by the global sensitivity (upper - lower)/n.
PrivateEstimate DpClippedMean(const Dataset& data, const FixedBoundsConfig& cfg,
                              RandomStream& stream);

}  // namespace pmw

#endif  // PMW_BASELINES_H_

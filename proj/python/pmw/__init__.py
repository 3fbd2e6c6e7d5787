# Copyright 2026 The PMW Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Differentially private, contamination-robust mean estimation."""

from ._pmw import (
    ClipLevelError,
    EstimatorError,
    GridExhaustedError,
    aggregation_envelope,
    compute_zeta,
    dp_clipped_mean,
    empirical_quantile,
    grid_coarseness_limit,
    lm_winsorized_mean,
    pmw_mean,
    practical_clip_level,
    private_quantile,
    recommend_bounds,
    run_grid,
    sample_complexity,
    ssa_mean,
    trimmed_mean,
    trimmed_mean_limit_exp,
)

__all__ = [
    "ClipLevelError",
    "EstimatorError",
    "GridExhaustedError",
    "aggregation_envelope",
    "compute_zeta",
    "dp_clipped_mean",
    "empirical_quantile",
    "grid_coarseness_limit",
    "lm_winsorized_mean",
    "pmw_mean",
    "practical_clip_level",
    "private_quantile",
    "recommend_bounds",
    "run_grid",
    "sample_complexity",
    "ssa_mean",
    "trimmed_mean",
    "trimmed_mean_limit_exp",
]

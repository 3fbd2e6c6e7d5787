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
"""Smoke tests for the Python bindings."""

import math
import random

import pytest

import pmw


def gaussian_sample(n, seed):
    rng = random.Random(seed)
    return [rng.gauss(0.0, 1.0) for _ in range(n)]


def test_pmw_mean_is_close_and_replays():
    data = gaussian_sample(2000, 1)
    a = pmw.pmw_mean(data, budget=1.0, seed=5, lower=-50, upper=50)
    b = pmw.pmw_mean(data, budget=1.0, seed=5, lower=-50, upper=50)
    assert a == b
    assert abs(a["value"] - sum(data) / len(data)) < 0.1
    assert a["clip_lo"] < a["clip_hi"]
    assert a["total_budget_strict"] == pytest.approx(1.0)
    assert a["kind"] == "zcdp" and a["mode"] == "practical"


def test_pmw_mean_modes_and_errors():
    data = gaussian_sample(400, 2)
    split = pmw.pmw_mean(data, 2.0, 3, -20, 20, mode="split", kind="pdp")
    assert split["kind"] == "pdp"
    with pytest.raises(pmw.ClipLevelError):
        pmw.pmw_mean(data, 4.0, 3, -50, 50, mode="theoretical")
    with pytest.raises(pmw.GridExhaustedError):
        pmw.pmw_mean([1e15] * 10, 1.0, 3, -1, 1, beta=1.5)
    with pytest.raises(ValueError):
        pmw.pmw_mean([], 1.0, 3, -1, 1)
    with pytest.raises(ValueError):
        pmw.pmw_mean(data, 1.0, 3, -1, 1, eta=0.6)
    assert issubclass(pmw.GridExhaustedError, pmw.EstimatorError)
    assert issubclass(pmw.EstimatorError, RuntimeError)


def test_private_quantile_lands_on_the_grid():
    data = list(range(1, 101))
    r = pmw.private_quantile(data, 0.5, 2.0, 2.0, seed=1, lower=0, upper=200,
                             beta=1.1)
    assert not r["hit_cap"]
    # Upper-quantile results are grid points 1.1^i + lower - 1.
    i = r["steps_taken"]
    assert r["value"] == pytest.approx(1.1 ** i - 1.0)
    assert 30 <= r["value"] <= 80


def test_baseline_and_empirical_helpers():
    r = pmw.dp_clipped_mean([1.0, 2.0, 3.0], -50, 50, 1.0, seed=1)
    assert r["noise_scale"] == pytest.approx(100 / (3 * math.sqrt(2)))
    assert pmw.empirical_quantile([3, 1, 2], 0.5) == 2
    assert pmw.lm_winsorized_mean(list(range(10)), list(range(10)), 0.2) == \
        pytest.approx(4.3)
    assert pmw.trimmed_mean([0, 1, 2, 3, 100], 1) == pytest.approx(2.0)


def test_bounds():
    assert pmw.practical_clip_level(1000, 5, 0) == pytest.approx(0.005)
    assert pmw.compute_zeta(20000, 0.0, 1 / 20000, -50, 50, 1.001) > 0
    assert pmw.grid_coarseness_limit("uniform", [0, 1], 0.1, 0, 1) == \
        pytest.approx(0.05 / 1.875)
    assert pmw.trimmed_mean_limit_exp(0.1) == pytest.approx(0.83071, abs=1e-5)
    assert pmw.sample_complexity(1.0, 1.0, 0.1, -1, 1, 2.0, 10.0) >= 1
    h_small = pmw.aggregation_envelope(20, 0, 0.05, 1.001, 50, -50, 0.7)
    h_large = pmw.aggregation_envelope(200, 0, 0.05, 1.001, 50, -50, 0.7)
    assert h_large <= h_small
    lower, upper = pmw.recommend_bounds(100, 0.0, 1.0)
    assert lower == -upper and upper > 0


def test_ssa_mean():
    values = gaussian_sample(4000, 3)
    r = pmw.ssa_mean(values, 100, 1.0, seed=2, lower=-50, upper=50)
    assert r["m"] == 100 and r["k"] == 40 and r["dropped"] == 0
    assert abs(r["value"]) < 0.5


def test_run_grid():
    config = "\n".join([
        "populations = gaussian, constant:2",
        "n = 50",
        "budgets = 1",
        "policies = practical",
        "estimators = pmw, clipped_mean",
        "replications = 5",
    ])
    rows = pmw.run_grid(config, jobs=2)
    assert len(rows) == 4
    assert rows == pmw.run_grid(config)
    assert rows[0]["population"] == "Gaussian"
    assert rows[1]["C"] == "NA"
    with pytest.raises(ValueError):
        pmw.run_grid("bogus = 1")

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

// Python bindings for the estimators, the bound evaluators and the
// replication harness. Data cross the boundary as sequences of floats;
// results come back as dicts so the key names match the CLI's JSON.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmw/baselines.h"
#include "pmw/empirical.h"
#include "pmw/noise.h"
#include "pmw/pmw_mean.h"
#include "pmw/privacy.h"
#include "pmw/private_quantile.h"
#include "pmw/simulation.h"
#include "pmw/subsample_aggregate.h"
#include "pmw/theory_bounds.h"

namespace py = pybind11;

namespace pmw {
namespace {

py::dict EstimateDict(const PrivateEstimate& est, PrivacyKind kind) {
  py::dict d;
  d["value"] = est.value;
  d["clip_lo"] = est.clip_interval.lo;
  d["clip_hi"] = est.clip_interval.hi;
  d["noise_scale"] = est.noise_scale;
  d["total_budget_strict"] = est.total_budget_strict;
  d["total_budget_literal"] = est.total_budget_literal;
  d["clip_level"] = est.clip_level;
  d["kind"] = std::string(PrivacyKindName(kind));
  d["warnings"] = est.warnings;
  return d;
}

py::dict PmwMeanPy(const std::vector<double>& data, double budget,
                   uint64_t seed, double lower, double upper, double beta,
                   const std::string& kind_name, const std::string& mode,
                   double c, double eta, std::optional<double> delta,
                   const std::string& split_name) {
  const PrivacyKind kind = ParsePrivacyKind(kind_name);
  const PrivacyBudget b =
      SplitBudget(budget, kind, ParseBudgetSplit(split_name));
  const QuantileGridParams grid = QuantileGridParams::Make(beta, lower, upper);
  const Dataset d(data);
  RandomStream stream(seed, 0);
  PrivateEstimate est;
  if (mode == "practical") {
    est = PmwMeanPractical(d, c, eta, grid, b, stream);
  } else if (mode == "split") {
    est = PmwMeanSplit(d, PracticalClip{c, eta}, grid, b, stream);
  } else if (mode == "theoretical") {
    est = PmwMeanSplit(d, TheoreticalClip{eta, delta}, grid, b, stream);
  } else {
    throw std::invalid_argument(
        "mode must be 'practical', 'split' or 'theoretical'");
  }
  py::dict out = EstimateDict(est, kind);
  out["split"] = split_name;
  out["mode"] = mode;
  return out;
}

py::dict PrivateQuantilePy(const std::vector<double>& data, double q,
                           double b1, double b2, uint64_t seed, double lower,
                           double upper, double beta,
                           const std::string& kind_name) {
  const PrivacyKind kind = ParsePrivacyKind(kind_name);
  RandomStream stream(seed, 0);
  const PrivateQuantileResult r =
      PrivateQuantile(Dataset(data), q, QuantileBudget{b1, b2, kind},
                      QuantileGridParams::Make(beta, lower, upper), stream);
  py::dict out;
  out["value"] = r.value;
  out["steps_taken"] = r.steps_taken;
  out["hit_cap"] = r.hit_cap;
  out["negated"] = r.negated;
  return out;
}

py::dict DpClippedMeanPy(const std::vector<double>& data, double lower,
                         double upper, double budget, uint64_t seed,
                         const std::string& kind_name) {
  const PrivacyKind kind = ParsePrivacyKind(kind_name);
  RandomStream stream(seed, 0);
  return EstimateDict(
      DpClippedMean(Dataset(data), FixedBoundsConfig{lower, upper, budget, kind},
                    stream),
      kind);
}

py::dict SsaMeanPy(const std::vector<double>& values, std::size_t m,
                   double budget, uint64_t seed, double lower, double upper,
                   double beta, double c, double eta,
                   const std::string& kind_name) {
  const PrivacyKind kind = ParsePrivacyKind(kind_name);
  std::vector<Row> rows;
  rows.reserve(values.size());
  for (double v : values) rows.push_back({v});
  RandomStream stream(seed, 0);
  const SsaResult r = RunSsa(
      std::span<const Row>(rows), MeanStatistic(0), m,
      PmwAggregator{c, eta, QuantileGridParams::Make(beta, lower, upper), kind,
                    BudgetSplit::kStrict},
      budget, stream);
  py::dict out;
  out["value"] = r.estimates.at(0);
  out["m"] = r.plan.m;
  out["k"] = r.plan.k;
  out["dropped"] = r.plan.dropped;
  out["total_budget"] = r.total_budget;
  out["warnings"] = r.warnings;
  return out;
}

DistributionOracle MakeOracle(const std::string& dist,
                              const std::vector<double>& p) {
  auto param = [&](std::size_t i, double fallback) {
    return i < p.size() ? p[i] : fallback;
  };
  if (dist == "uniform") return DistributionOracle::Uniform(param(0, 0), param(1, 1));
  if (dist == "exponential") return DistributionOracle::Exponential(param(0, 1));
  if (dist == "gaussian") return DistributionOracle::Gaussian(param(0, 0), param(1, 1));
  if (dist == "student_t") return DistributionOracle::StudentT(param(0, 3));
  throw std::invalid_argument("unknown distribution '" + dist + "'");
}

std::vector<py::dict> RunGridPy(const std::string& config, std::size_t jobs) {
  std::istringstream in(config);
  const ExperimentGrid grid = ParseGridConfig(in);
  std::vector<ResultRow> rows;
  {
    py::gil_scoped_release release;
    rows = RunGrid(grid, jobs);
  }
  std::vector<py::dict> out;
  for (const auto& r : rows) {
    py::dict d;
    d["population"] = r.population;
    d["n"] = r.n;
    d["rho"] = r.budget;
    d["policy"] = r.policy;
    d["estimator"] = r.estimator;
    d["C"] = r.c;
    d["eta"] = r.eta;
    d["mse"] = r.mse;
    d["noise_var"] = r.noise_variance;
    d["mae"] = r.mean_abs_error;
    d["reps"] = r.replications;
    d["failed"] = r.failed;
    d["flagged"] = r.flagged;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace
}  // namespace pmw

PYBIND11_MODULE(_pmw, m) {
  using namespace pmw;
  using namespace py::literals;
  m.doc() = "Private modified winsorized mean and supporting routines";

  auto estimator_error = py::register_exception<EstimatorError>(
      m, "EstimatorError", PyExc_RuntimeError);
  py::register_exception<GridExhaustedError>(m, "GridExhaustedError",
                                             estimator_error.ptr());
  py::register_exception<ClipLevelError>(m, "ClipLevelError",
                                         estimator_error.ptr());

  m.def("pmw_mean", &PmwMeanPy, "data"_a, "budget"_a, "seed"_a, "lower"_a,
        "upper"_a, "beta"_a = 1.001, "kind"_a = "zcdp", "mode"_a = "practical",
        "C"_a = 5.0, "eta"_a = 0.0, "delta"_a = std::nullopt,
        "split"_a = "strict",
        "Differentially private PMW mean of `data`.");
  m.def("private_quantile", &PrivateQuantilePy, "data"_a, "q"_a, "b1"_a,
        "b2"_a, "seed"_a, "lower"_a, "upper"_a, "beta"_a = 1.001,
        "kind"_a = "zcdp", "Private quantile search on the geometric grid.");
  m.def("dp_clipped_mean", &DpClippedMeanPy, "data"_a, "lower"_a, "upper"_a,
        "budget"_a, "seed"_a, "kind"_a = "zcdp",
        "Fixed-bounds clipped mean with additive noise.");
  m.def("ssa_mean", &SsaMeanPy, "values"_a, "m"_a, "budget"_a, "seed"_a,
        "lower"_a, "upper"_a, "beta"_a = 1.001, "C"_a = 1.0, "eta"_a = 0.0,
        "kind"_a = "zcdp",
        "Subsample-and-aggregate of group means with PMW aggregation.");

  m.def("empirical_quantile",
        [](const std::vector<double>& data, double q) {
          return EmpiricalQuantile(Dataset(data), q);
        },
        "data"_a, "q"_a);
  m.def("lm_winsorized_mean",
        [](const std::vector<double>& estimation,
           const std::vector<double>& quantile, double p) {
          return LmWinsorizedMean(Dataset(estimation), Dataset(quantile), p);
        },
        "estimation"_a, "quantile"_a, "p"_a);
  m.def("trimmed_mean",
        [](const std::vector<double>& data, std::size_t trim) {
          return TrimmedMean(Dataset(data), trim);
        },
        "data"_a, "m"_a);

  m.def("compute_zeta", &ComputeZeta, "n"_a, "eta"_a, "delta"_a, "lower"_a,
        "upper"_a, "beta"_a);
  m.def("practical_clip_level", &PracticalClipLevel, "n"_a, "C"_a, "eta"_a);
  m.def("grid_coarseness_limit",
        [](const std::string& dist, const std::vector<double>& params,
           double zeta, double lower, double upper) {
          return GridCoarsenessLimit(MakeOracle(dist, params), zeta, lower,
                                     upper);
        },
        "dist"_a, "params"_a, "zeta"_a, "lower"_a, "upper"_a);
  m.def("aggregation_envelope", &AggregationEnvelope, "m"_a, "eta"_a,
        "delta"_a, "beta"_a, "upper"_a, "lower"_a, "e3"_a);
  m.def("sample_complexity", &SampleComplexity, "t"_a, "sigma"_a, "delta"_a,
        "lower"_a, "upper"_a, "beta"_a, "e3"_a, "K"_a = 1.0);
  m.def("trimmed_mean_limit_exp", &TrimmedMeanLimitExp, "p"_a);
  m.def("recommend_bounds",
        [](int64_t n, double mu0, double sigma0, double margin) {
          const SuggestedBounds b = RecommendBounds(n, mu0, sigma0, margin);
          return py::make_tuple(b.lower, b.upper);
        },
        "n"_a, "mu0"_a, "sigma0"_a, "margin"_a = 2.0);

  m.def("run_grid", &RunGridPy, "config"_a, "jobs"_a = 1,
        "Run a replication grid given as key = value config text.");
}

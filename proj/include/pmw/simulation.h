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

// Replication harness: population samplers, an adversarial contamination
// operator and a seeded grid runner that reports MSE, additive-noise
// variance and mean absolute error per cell.

#ifndef PMW_SIMULATION_H_
#define PMW_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "pmw/empirical.h"
#include "pmw/noise.h"
#include "pmw/pmw_mean.h"
#include "pmw/privacy.h"

namespace pmw {

struct GaussianLaw {
  double mu = 0.0;
  double sigma = 1.0;
};
// w N(mu1, sigma1^2) + (1 - w) N(mu2, sigma2^2).
struct GaussianMixtureLaw {
  double w = 0.5;
  double mu1 = -5.0;
  double sigma1 = 1.0;
  double mu2 = 5.0;
  double sigma2 = 1.0;
};
struct ExponentialLaw {
  double rate = 1.0;
};
// Integer degrees of freedom >= 3.
struct StudentTLaw {
  double df = 3.0;
};
// (1 - w) N(0, 1) + w N(mu, sigma^2). The estimation target is the inlier
// mean 0, not the mixture mean.
struct ContaminatedGaussianLaw {
  double w_cont = 0.2;
  double mu_cont = 10.0;
  double sigma_cont = 1.0;
};
struct ConstantLaw {
  double value = 0.0;
};

using PopulationLaw =
    std::variant<GaussianLaw, GaussianMixtureLaw, ExponentialLaw, StudentTLaw,
                 ContaminatedGaussianLaw, ConstantLaw>;

struct Population {
  PopulationLaw law;

  // Table label: Gaussian, Gaussian Mix., Skewed, Heavy Tails,
  // Cont. Gaussian, Constant.
  std::string Label() const;
  // Analytic mean of the sampling law.
  double TrueMean() const;
  // Value estimates are scored against.
  double TargetMean() const;
  // Config syntax, e.g. "gaussian", "gaussian:0:1", "mixture:0.5:-5:1:5:1",
  // "exponential:1", "student_t:3", "cont_gaussian:0.2:10:1", "constant:7".
  static Population Parse(const std::string& spec);
  std::string Spec() const;
};

// Throws std::invalid_argument for StudentT with df <= 2 or non-integer df.
Dataset SamplePopulation(const Population& pop, std::size_t n,
                         RandomStream& stream);

struct PointMass {
  double value = 0.0;
};
struct Shift {
  double delta = 0.0;
};
using Adversary = std::variant<PointMass, Shift>;

// Replaces floor(eta n) uniformly chosen points by the point mass, or shifts
// them by delta. 0 <= eta <= 1/2.
Dataset Contaminate(const Dataset& data, double eta, const Adversary& adversary,
                    RandomStream& stream);

// Clip policy of one grid column.
struct PolicySpec {
  enum class Mode {
    kPractical,    // full-data reuse, C/eta clip level
    kSplit,        // sample splitting, C/eta clip level
    kTheoretical,  // sample splitting, zeta clip level
  };
  Mode mode = Mode::kPractical;
  std::optional<double> c = 5.0;  // nullopt: C ~ Uniform{1..100} per trial
  double eta = 0.0;
  std::optional<double> delta;  // kTheoretical only

  std::string Label() const;
  std::string CLabel() const;
  static PolicySpec Parse(const std::string& spec);
};

enum class EstimatorKind {
  kPmw,           // PMW mean under the cell's policy
  kPmwZeroNoise,  // same with the zero stream; test hook
  kClippedMean,   // fixed-bounds clipped mean over [lower, upper]
};

EstimatorKind ParseEstimatorKind(const std::string& name);
std::string EstimatorName(EstimatorKind kind);

struct ExperimentGrid {
  std::vector<Population> populations;
  std::vector<std::size_t> n_values;
  std::vector<double> budgets;
  std::vector<PolicySpec> policies;
  std::vector<EstimatorKind> estimators = {EstimatorKind::kPmw};
  std::size_t replications = 250;
  uint64_t base_seed = 0;
  PrivacyKind kind = PrivacyKind::kZcdp;
  double beta = 1.001;
  double lower = -50.0;
  double upper = 50.0;
  BudgetSplit split = BudgetSplit::kLiteral;
  // Optional adversarial corruption applied after sampling.
  double contamination = 0.0;
  std::optional<Adversary> adversary;

  void Validate() const;
  std::size_t CellCount() const;
  // Every setting, defaults included, as a JSON object.
  std::string Fingerprint() const;
};

// key = value lines; '#' starts a comment. Keys: populations, n, budgets,
// policies, estimators, replications, seed, kind, beta, lower, upper, split,
// contamination, adversary (pointmass:v | shift:d).
ExperimentGrid ParseGridConfig(std::istream& in);

struct ResultRow {
  std::string population;
  std::size_t n = 0;
  double budget = 0.0;
  std::string policy;
  std::string estimator;
  std::string c;
  double eta = 0.0;
  double mse = 0.0;
  double noise_variance = 0.0;
  double mean_abs_error = 0.0;
  std::size_t replications = 0;  // successful trials
  std::size_t failed = 0;
  bool flagged = false;  // failed > 5% of attempted trials
  std::string first_error;  // message of the first failed trial, if any
};

// Runs every cell. Trial r of cell c draws from
// RandomStream(base_seed, c * replications + r), so the output does not
// depend on `jobs`. Rows come back in cell order: population, n, budget,
// policy, estimator.
std::vector<ResultRow> RunGrid(const ExperimentGrid& grid, std::size_t jobs = 1);

void WriteResultsCsv(const std::vector<ResultRow>& rows, std::ostream& out);
void WriteResultsJsonl(const std::vector<ResultRow>& rows, std::ostream& out);

}  // namespace pmw

#endif  // PMW_SIMULATION_H_

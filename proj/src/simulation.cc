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

#include "pmw/simulation.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"
#include "pmw/baselines.h"

namespace pmw {
namespace {

using json = nlohmann::ordered_json;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double ParseDouble(std::string_view s) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("cannot parse '" + std::string(s) +
                                "' as a number");
  }
  return v;
}

uint64_t ParseUnsigned(std::string_view s) {
  s = Trim(s);
  uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("cannot parse '" + std::string(s) +
                                "' as a non-negative integer");
  }
  return v;
}

// floor(x), treating values within 1e-9 of an integer as that integer.
std::size_t SnappedFloor(double x) {
  const double nearest = std::round(x);
  const double v = std::abs(x - nearest) <= 1e-9 ? nearest : std::floor(x);
  return static_cast<std::size_t>(std::max(v, 0.0));
}

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

double Gaussian(RandomStream& stream) {
  return Sample(NoiseKind::kStandardGaussian, stream);
}

std::vector<double> Params(const std::vector<std::string>& parts,
                           std::size_t expected, const std::string& spec) {
  std::vector<double> out;
  if (parts.size() == 1) return out;
  if (parts.size() != expected + 1) {
    throw std::invalid_argument("population '" + spec + "' expects " +
                                std::to_string(expected) + " parameters");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) out.push_back(ParseDouble(parts[i]));
  return out;
}

}  // namespace

std::string Population::Label() const {
  struct {
    std::string operator()(const GaussianLaw&) const { return "Gaussian"; }
    std::string operator()(const GaussianMixtureLaw&) const {
      return "Gaussian Mix.";
    }
    std::string operator()(const ExponentialLaw&) const { return "Skewed"; }
    std::string operator()(const StudentTLaw&) const { return "Heavy Tails"; }
    std::string operator()(const ContaminatedGaussianLaw&) const {
      return "Cont. Gaussian";
    }
    std::string operator()(const ConstantLaw&) const { return "Constant"; }
  } visitor;
  return std::visit(visitor, law);
}

double Population::TrueMean() const {
  struct {
    double operator()(const GaussianLaw& g) const { return g.mu; }
    double operator()(const GaussianMixtureLaw& g) const {
      return g.w * g.mu1 + (1.0 - g.w) * g.mu2;
    }
    double operator()(const ExponentialLaw& e) const { return 1.0 / e.rate; }
    double operator()(const StudentTLaw&) const { return 0.0; }
    double operator()(const ContaminatedGaussianLaw& c) const {
      return c.w_cont * c.mu_cont;
    }
    double operator()(const ConstantLaw& c) const { return c.value; }
  } visitor;
  return std::visit(visitor, law);
}

double Population::TargetMean() const {
  if (std::holds_alternative<ContaminatedGaussianLaw>(law)) return 0.0;
  return TrueMean();
}

Population Population::Parse(const std::string& spec) {
  const auto parts = Split(spec, ':');
  const std::string& name = parts[0];
  if (name == "gaussian") {
    const auto p = Params(parts, 2, spec);
    GaussianLaw g;
    if (!p.empty()) g = {p[0], p[1]};
    if (!(g.sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
    return {g};
  }
  if (name == "mixture") {
    const auto p = Params(parts, 5, spec);
    GaussianMixtureLaw g;
    if (!p.empty()) g = {p[0], p[1], p[2], p[3], p[4]};
    if (!(g.w >= 0.0 && g.w <= 1.0) || !(g.sigma1 > 0.0) || !(g.sigma2 > 0.0)) {
      throw std::invalid_argument("invalid mixture parameters");
    }
    return {g};
  }
  if (name == "exponential") {
    const auto p = Params(parts, 1, spec);
    ExponentialLaw e;
    if (!p.empty()) e.rate = p[0];
    if (!(e.rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
    return {e};
  }
  if (name == "student_t") {
    const auto p = Params(parts, 1, spec);
    StudentTLaw t;
    if (!p.empty()) t.df = p[0];
    if (!(t.df > 2.0) || t.df != std::floor(t.df)) {
      throw std::invalid_argument("student t needs an integer df > 2");
    }
    return {t};
  }
  if (name == "cont_gaussian") {
    const auto p = Params(parts, 3, spec);
    ContaminatedGaussianLaw c;
    if (!p.empty()) c = {p[0], p[1], p[2]};
    if (!(c.w_cont >= 0.0 && c.w_cont <= 1.0) || !(c.sigma_cont > 0.0)) {
      throw std::invalid_argument("invalid contaminated gaussian parameters");
    }
    return {c};
  }
  if (name == "constant") {
    const auto p = Params(parts, 1, spec);
    if (p.empty()) throw std::invalid_argument("constant needs a value");
    return {ConstantLaw{p[0]}};
  }
  throw std::invalid_argument("unknown population '" + spec + "'");
}

std::string Population::Spec() const {
  std::ostringstream os;
  os << std::setprecision(17);
  std::visit(
      [&os](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, GaussianLaw>) {
          os << "gaussian:" << l.mu << ":" << l.sigma;
        } else if constexpr (std::is_same_v<T, GaussianMixtureLaw>) {
          os << "mixture:" << l.w << ":" << l.mu1 << ":" << l.sigma1 << ":"
             << l.mu2 << ":" << l.sigma2;
        } else if constexpr (std::is_same_v<T, ExponentialLaw>) {
          os << "exponential:" << l.rate;
        } else if constexpr (std::is_same_v<T, StudentTLaw>) {
          os << "student_t:" << l.df;
        } else if constexpr (std::is_same_v<T, ContaminatedGaussianLaw>) {
          os << "cont_gaussian:" << l.w_cont << ":" << l.mu_cont << ":"
             << l.sigma_cont;
        } else {
          os << "constant:" << l.value;
        }
      },
      law);
  return os.str();
}

Dataset SamplePopulation(const Population& pop, std::size_t n,
                         RandomStream& stream) {
  if (n == 0) throw std::invalid_argument("sample size must be >= 1");
  if (const auto* t = std::get_if<StudentTLaw>(&pop.law)) {
    if (!(t->df > 2.0)) {
      throw std::invalid_argument(
          "student t needs df > 2 for a finite variance");
    }
    if (t->df != std::floor(t->df)) {
      throw std::invalid_argument("student t df must be an integer");
    }
  }
  std::vector<double> values(n);
  for (double& v : values) {
    v = std::visit(
        [&stream](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, GaussianLaw>) {
            return l.mu + l.sigma * Gaussian(stream);
          } else if constexpr (std::is_same_v<T, GaussianMixtureLaw>) {
            const bool first = stream.NextUniform() < l.w;
            const double z = Gaussian(stream);
            return first ? l.mu1 + l.sigma1 * z : l.mu2 + l.sigma2 * z;
          } else if constexpr (std::is_same_v<T, ExponentialLaw>) {
            return Sample(NoiseKind::kStandardExponential, stream) / l.rate;
          } else if constexpr (std::is_same_v<T, StudentTLaw>) {
            const double z = Gaussian(stream);
            double chi2 = 0.0;
            const auto df = static_cast<int>(l.df);
            for (int i = 0; i < df; ++i) {
              const double g = Gaussian(stream);
              chi2 += g * g;
            }
            return z / std::sqrt(chi2 / l.df);
          } else if constexpr (std::is_same_v<T, ContaminatedGaussianLaw>) {
            const bool outlier = stream.NextUniform() < l.w_cont;
            const double z = Gaussian(stream);
            return outlier ? l.mu_cont + l.sigma_cont * z : z;
          } else {
            return l.value;
          }
        },
        pop.law);
  }
  return Dataset(std::move(values));
}

Dataset Contaminate(const Dataset& data, double eta, const Adversary& adversary,
                    RandomStream& stream) {
  if (!(eta >= 0.0 && eta <= 0.5)) {
    throw std::invalid_argument("contamination eta must lie in [0, 1/2]");
  }
  const std::size_t n = data.size();
  const std::size_t count = SnappedFloor(eta * static_cast<double>(n));
  std::vector<double> values(data.values().begin(), data.values().end());
  if (count == 0) return Dataset(std::move(values));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first `count` slots are a uniform subset.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + stream.NextIndex(n - i);
    std::swap(idx[i], idx[j]);
  }
  for (std::size_t i = 0; i < count; ++i) {
    double& v = values[idx[i]];
    if (const auto* pm = std::get_if<PointMass>(&adversary)) {
      v = pm->value;
    } else {
      v += std::get<Shift>(adversary).delta;
    }
  }
  return Dataset(std::move(values));
}

std::string PolicySpec::Label() const {
  switch (mode) {
    case Mode::kPractical:
      return "practical";
    case Mode::kSplit:
      return "split";
    case Mode::kTheoretical:
      return "theoretical";
  }
  return "";
}

std::string PolicySpec::CLabel() const {
  if (mode == Mode::kTheoretical) return "zeta";
  return c ? FormatNumber(*c) : "rand";
}

PolicySpec PolicySpec::Parse(const std::string& spec) {
  const auto parts = Split(spec, ':');
  PolicySpec p;
  if (parts[0] == "practical") {
    p.mode = Mode::kPractical;
  } else if (parts[0] == "split") {
    p.mode = Mode::kSplit;
  } else if (parts[0] == "theoretical") {
    p.mode = Mode::kTheoretical;
    p.c.reset();
  } else {
    throw std::invalid_argument("unknown policy '" + spec + "'");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto kv = Split(parts[i], '=');
    if (kv.size() != 2) {
      throw std::invalid_argument("policy option '" + parts[i] +
                                  "' is not key=value");
    }
    if (kv[0] == "C" || kv[0] == "c") {
      if (p.mode == Mode::kTheoretical) {
        throw std::invalid_argument("theoretical policy does not take C");
      }
      if (kv[1] == "rand") {
        p.c.reset();
      } else {
        p.c = ParseDouble(kv[1]);
        if (!(*p.c > 0.0)) throw std::invalid_argument("C must be positive");
      }
    } else if (kv[0] == "eta") {
      p.eta = ParseDouble(kv[1]);
    } else if (kv[0] == "delta") {
      p.delta = ParseDouble(kv[1]);
    } else {
      throw std::invalid_argument("unknown policy option '" + kv[0] + "'");
    }
  }
  if (!(p.eta >= 0.0 && p.eta < 0.5)) {
    throw std::invalid_argument("policy eta must lie in [0, 1/2)");
  }
  return p;
}

EstimatorKind ParseEstimatorKind(const std::string& name) {
  if (name == "pmw") return EstimatorKind::kPmw;
  if (name == "pmw_zero_noise") return EstimatorKind::kPmwZeroNoise;
  if (name == "clipped_mean") return EstimatorKind::kClippedMean;
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

std::string EstimatorName(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kPmw:
      return "pmw";
    case EstimatorKind::kPmwZeroNoise:
      return "pmw_zero_noise";
    case EstimatorKind::kClippedMean:
      return "clipped_mean";
  }
  return "";
}

void ExperimentGrid::Validate() const {
  if (populations.empty() || n_values.empty() || budgets.empty() ||
      policies.empty() || estimators.empty()) {
    throw std::invalid_argument(
        "grid needs at least one population, n, budget, policy and estimator");
  }
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  for (std::size_t n : n_values) {
    if (n < 2) throw std::invalid_argument("grid sample sizes must be >= 2");
  }
  for (double b : budgets) {
    if (!(b > 0.0)) throw std::invalid_argument("grid budgets must be positive");
  }
  QuantileGridParams::Make(beta, lower, upper);
  if (!(contamination >= 0.0 && contamination <= 0.5)) {
    throw std::invalid_argument("contamination must lie in [0, 1/2]");
  }
  if (contamination > 0.0 && !adversary) {
    throw std::invalid_argument("contamination needs an adversary");
  }
}

std::size_t ExperimentGrid::CellCount() const {
  return populations.size() * n_values.size() * budgets.size() *
         policies.size() * estimators.size();
}

std::string ExperimentGrid::Fingerprint() const {
  json j;
  j["populations"] = json::array();
  for (const auto& p : populations) {
    j["populations"].push_back(
        {{"label", p.Label()}, {"spec", p.Spec()},
         {"true_mean", p.TrueMean()}, {"target_mean", p.TargetMean()}});
  }
  j["n"] = n_values;
  j["budgets"] = budgets;
  j["policies"] = json::array();
  for (const auto& p : policies) {
    json pj = {{"mode", p.Label()}, {"C", p.CLabel()}, {"eta", p.eta}};
    if (p.delta) pj["delta"] = *p.delta;
    j["policies"].push_back(pj);
  }
  j["estimators"] = json::array();
  for (auto e : estimators) j["estimators"].push_back(EstimatorName(e));
  j["replications"] = replications;
  j["seed"] = base_seed;
  j["kind"] = PrivacyKindName(kind);
  j["beta"] = beta;
  j["lower"] = lower;
  j["upper"] = upper;
  j["split"] = BudgetSplitName(split);
  j["contamination"] = contamination;
  if (adversary) {
    if (const auto* pm = std::get_if<PointMass>(&*adversary)) {
      j["adversary"] = {{"type", "pointmass"}, {"value", pm->value}};
    } else {
      j["adversary"] = {{"type", "shift"},
                        {"delta", std::get<Shift>(*adversary).delta}};
    }
  }
  j["stream_rule"] = "RandomStream(seed, cell_index * replications + rep)";
  return j.dump();
}

ExperimentGrid ParseGridConfig(std::istream& in) {
  ExperimentGrid grid;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string_view body = Trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key(Trim(body.substr(0, eq)));
    const std::string_view value = Trim(body.substr(eq + 1));
    try {
      if (key == "populations") {
        grid.populations.clear();
        for (const auto& s : Split(value, ',')) {
          grid.populations.push_back(Population::Parse(s));
        }
      } else if (key == "n") {
        grid.n_values.clear();
        for (const auto& s : Split(value, ',')) {
          grid.n_values.push_back(ParseUnsigned(s));
        }
      } else if (key == "budgets") {
        grid.budgets.clear();
        for (const auto& s : Split(value, ',')) grid.budgets.push_back(ParseDouble(s));
      } else if (key == "policies") {
        grid.policies.clear();
        for (const auto& s : Split(value, ',')) {
          grid.policies.push_back(PolicySpec::Parse(s));
        }
      } else if (key == "estimators") {
        grid.estimators.clear();
        for (const auto& s : Split(value, ',')) {
          grid.estimators.push_back(ParseEstimatorKind(s));
        }
      } else if (key == "replications") {
        grid.replications = ParseUnsigned(value);
      } else if (key == "seed") {
        grid.base_seed = ParseUnsigned(value);
      } else if (key == "kind") {
        grid.kind = ParsePrivacyKind(value);
      } else if (key == "beta") {
        grid.beta = ParseDouble(value);
      } else if (key == "lower") {
        grid.lower = ParseDouble(value);
      } else if (key == "upper") {
        grid.upper = ParseDouble(value);
      } else if (key == "split") {
        grid.split = ParseBudgetSplit(value);
      } else if (key == "contamination") {
        grid.contamination = ParseDouble(value);
      } else if (key == "adversary") {
        const auto parts = Split(value, ':');
        if (parts.size() != 2) {
          throw std::invalid_argument("adversary must be pointmass:v or shift:d");
        }
        if (parts[0] == "pointmass") {
          grid.adversary = PointMass{ParseDouble(parts[1])};
        } else if (parts[0] == "shift") {
          grid.adversary = Shift{ParseDouble(parts[1])};
        } else {
          throw std::invalid_argument("adversary must be pointmass:v or shift:d");
        }
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  grid.Validate();
  return grid;
}

namespace {

struct CellKey {
  std::size_t population;
  std::size_t n;
  std::size_t budget;
  std::size_t policy;
  std::size_t estimator;
};

CellKey DecodeCell(const ExperimentGrid& grid, std::size_t cell) {
  CellKey key{};
  key.estimator = cell % grid.estimators.size();
  cell /= grid.estimators.size();
  key.policy = cell % grid.policies.size();
  cell /= grid.policies.size();
  key.budget = cell % grid.budgets.size();
  cell /= grid.budgets.size();
  key.n = cell % grid.n_values.size();
  cell /= grid.n_values.size();
  key.population = cell;
  return key;
}

PrivateEstimate RunEstimator(const ExperimentGrid& grid,
                             const QuantileGridParams& qgrid,
                             const PolicySpec& policy, EstimatorKind estimator,
                             double budget, const Dataset& data,
                             RandomStream& stream) {
  if (estimator == EstimatorKind::kClippedMean) {
    return DpClippedMean(
        data, FixedBoundsConfig{grid.lower, grid.upper, budget, grid.kind},
        stream);
  }
  // C ~ Uniform{1, ..., 100} is drawn even for the zero-noise estimator so
  // both see the same configuration sequence.
  double c = 0.0;
  if (policy.mode != PolicySpec::Mode::kTheoretical) {
    c = policy.c ? *policy.c : static_cast<double>(1 + stream.NextIndex(100));
  }
  RandomStream zero = RandomStream::Zero();
  RandomStream& noise = estimator == EstimatorKind::kPmwZeroNoise ? zero : stream;
  const PrivacyBudget split = SplitBudget(budget, grid.kind, grid.split);
  switch (policy.mode) {
    case PolicySpec::Mode::kPractical:
      return PmwMeanPractical(data, c, policy.eta, qgrid, split, noise);
    case PolicySpec::Mode::kSplit:
      return PmwMeanSplit(data, PracticalClip{c, policy.eta}, qgrid, split,
                          noise);
    case PolicySpec::Mode::kTheoretical:
      return PmwMeanSplit(data, TheoreticalClip{policy.eta, policy.delta},
                          qgrid, split, noise);
  }
  throw std::logic_error("unreachable policy mode");
}

ResultRow RunCell(const ExperimentGrid& grid, const QuantileGridParams& qgrid,
                  std::size_t cell) {
  const CellKey key = DecodeCell(grid, cell);
  const Population& pop = grid.populations[key.population];
  const std::size_t n = grid.n_values[key.n];
  const double budget = grid.budgets[key.budget];
  const PolicySpec& policy = grid.policies[key.policy];
  const EstimatorKind estimator = grid.estimators[key.estimator];
  const double target = pop.TargetMean();

  ResultRow row;
  row.population = pop.Label();
  row.n = n;
  row.budget = budget;
  row.policy = policy.Label();
  row.estimator = EstimatorName(estimator);
  row.c = estimator == EstimatorKind::kClippedMean ? "NA" : policy.CLabel();
  row.eta = policy.eta;

  double sq = 0.0;
  double abs_err = 0.0;
  std::vector<double> noise;
  noise.reserve(grid.replications);
  for (std::size_t r = 0; r < grid.replications; ++r) {
    RandomStream stream(grid.base_seed, cell * grid.replications + r);
    try {
      Dataset data = SamplePopulation(pop, n, stream);
      if (grid.contamination > 0.0) {
        data = Contaminate(data, grid.contamination, *grid.adversary, stream);
      }
      const PrivateEstimate est =
          RunEstimator(grid, qgrid, policy, estimator, budget, data, stream);
      const double err = est.value - target;
      sq += err * err;
      abs_err += std::abs(err);
      noise.push_back(est.noise_term);
      ++row.replications;
    } catch (const std::exception& e) {
      if (row.failed == 0) row.first_error = e.what();
      ++row.failed;
    }
  }
  const auto ok = static_cast<double>(row.replications);
  if (row.replications == 0) {
    row.mse = row.mean_abs_error = row.noise_variance =
        std::numeric_limits<double>::quiet_NaN();
  } else {
    row.mse = sq / ok;
    row.mean_abs_error = abs_err / ok;
    if (noise.size() > 1) {
      const double mean =
          std::accumulate(noise.begin(), noise.end(), 0.0) / ok;
      double ss = 0.0;
      for (double v : noise) ss += (v - mean) * (v - mean);
      row.noise_variance = ss / (ok - 1.0);
    }
  }
  row.flagged = static_cast<double>(row.failed) >
                0.05 * static_cast<double>(grid.replications);
  return row;
}

}  // namespace

std::vector<ResultRow> RunGrid(const ExperimentGrid& grid, std::size_t jobs) {
  grid.Validate();
  const QuantileGridParams qgrid =
      QuantileGridParams::Make(grid.beta, grid.lower, grid.upper);
  const std::size_t cells = grid.CellCount();
  std::vector<ResultRow> rows(cells);
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(cells, 1));
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells; ++c) rows[c] = RunCell(grid, qgrid, c);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t c = next++; c < cells; c = next++) {
        rows[c] = RunCell(grid, qgrid, c);
      }
    });
  }
  for (auto& t : workers) t.join();
  return rows;
}

void WriteResultsCsv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "population,n,rho,policy,estimator,C,eta,mse,noise_var,mae,reps,"
         "failed\n";
  for (const auto& r : rows) {
    out << r.population << ',' << r.n << ',' << FormatNumber(r.budget) << ','
        << r.policy << ',' << r.estimator << ',' << r.c << ','
        << FormatNumber(r.eta) << ',' << FormatNumber(r.mse) << ','
        << FormatNumber(r.noise_variance) << ','
        << FormatNumber(r.mean_abs_error) << ',' << r.replications << ','
        << r.failed << '\n';
  }
}

void WriteResultsJsonl(const std::vector<ResultRow>& rows, std::ostream& out) {
  auto num = [](double v) -> json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  for (const auto& r : rows) {
    json j;
    j["population"] = r.population;
    j["n"] = r.n;
    j["rho"] = r.budget;
    j["policy"] = r.policy;
    j["estimator"] = r.estimator;
    j["C"] = r.c;
    j["eta"] = r.eta;
    j["mse"] = num(r.mse);
    j["noise_var"] = num(r.noise_variance);
    j["mae"] = num(r.mean_abs_error);
    j["reps"] = r.replications;
    j["failed"] = r.failed;
    out << j.dump() << '\n';
  }
}

}  // namespace pmw

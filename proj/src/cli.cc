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

#include "pmw/cli.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmw/baselines.h"
#include "pmw/empirical.h"
#include "pmw/noise.h"
#include "pmw/pmw_mean.h"
#include "pmw/private_quantile.h"
#include "pmw/simulation.h"
#include "pmw/subsample_aggregate.h"
#include "pmw/theory_bounds.h"

namespace pmw {
namespace {

using json = nlohmann::ordered_json;

constexpr char kEnvPrefix[] = "PMW_";
constexpr char kZeroNoiseBanner[] =
    "UNSAFE ZERO NOISE: this output is not differentially private";

// Options shared by the releasing subcommands.
struct ReleaseOptions {
  std::optional<double> budget;
  std::optional<uint64_t> seed;
  std::string kind = "zcdp";
  bool unsafe_zero_noise = false;
};

struct GridOptions {
  double beta = 1.001;
  std::optional<double> lower;
  std::optional<double> upper;
};

struct EstimateOptions {
  ReleaseOptions release;
  GridOptions grid;
  std::string input;
  std::string mode = "practical";
  double c = 5.0;
  double eta = 0.0;
  std::optional<double> delta;
  std::string split = "strict";
  std::vector<double> suggest;
};

struct QuantileOptions {
  ReleaseOptions release;
  GridOptions grid;
  std::string input;
  double q = 0.5;
  std::vector<double> suggest;
};

struct SimulateOptions {
  std::string config;
  std::string output;
  std::string jsonl;
  std::size_t jobs = 1;
  std::optional<uint64_t> seed;
};

struct SsaOptions {
  ReleaseOptions release;
  GridOptions grid;
  std::string input;
  std::vector<std::size_t> demo;
  std::string y;
  std::vector<std::string> x;
  std::string column;
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  std::string aggregator = "pmw";
  double c = 1.0;
  double eta = 0.0;
  std::string split = "strict";
};

struct BoundsOptions {
  std::string name;
  std::map<std::string, double> values;
  std::string dist = "gaussian";
  std::vector<double> dist_params;
};

std::string EnvName(const std::string& long_name) {
  std::string env = kEnvPrefix;
  for (char ch : long_name) {
    env += ch == '-' ? '_'
                     : static_cast<char>(
                           std::toupper(static_cast<unsigned char>(ch)));
  }
  return env;
}

// Binds PMW_<NAME> to every named option of `app` except help and the
// zero-noise escape hatch, which must be typed explicitly.
void BindEnvironment(CLI::App* app) {
  for (CLI::Option* opt : app->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "unsafe-zero-noise") continue;
    opt->envname(EnvName(name));
  }
}

void AddReleaseOptions(CLI::App* app, ReleaseOptions& opts) {
  app->add_option("--budget", opts.budget,
                  "Total privacy budget (epsilon for pdp, rho for zcdp)")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", opts.seed, "Seed of the noise stream");
  app->add_option("--kind", opts.kind, "Privacy notion")
      ->check(CLI::IsMember({"pdp", "zcdp"}));
  app->add_flag("--unsafe-zero-noise", opts.unsafe_zero_noise,
                "Replace all noise by zero (testing only; output is not "
                "private)");
}

void AddGridOptions(CLI::App* app, GridOptions& opts) {
  app->add_option("--beta", opts.beta, "Geometric grid ratio (> 1)");
  app->add_option("--lower", opts.lower, "Grid anchor for upper quantiles");
  app->add_option("--upper", opts.upper, "Grid anchor for lower quantiles");
}

void AddSuggestOption(CLI::App* app, std::vector<double>& target) {
  app->add_option("--suggest-bounds", target,
                  "Print suggested grid bounds for N MU0 SIGMA0 and exit")
      ->expected(3);
}

void RequireRelease(const ReleaseOptions& opts) {
  if (!opts.budget) throw std::invalid_argument("--budget is required");
  if (!opts.seed) throw std::invalid_argument("--seed is required");
}

QuantileGridParams ResolveGrid(const GridOptions& opts) {
  if (!opts.lower || !opts.upper) {
    throw std::invalid_argument(
        "--lower and --upper are required; use --suggest-bounds for a "
        "starting point");
  }
  return QuantileGridParams::Make(opts.beta, *opts.lower, *opts.upper);
}

RandomStream MakeStream(const ReleaseOptions& opts, std::ostream& err) {
  if (opts.unsafe_zero_noise) {
    err << "warning: " << kZeroNoiseBanner << "\n";
    return RandomStream::Zero();
  }
  return RandomStream(*opts.seed, 0);
}

void LabelZeroNoise(const ReleaseOptions& opts, json& doc) {
  if (opts.unsafe_zero_noise) {
    doc["unsafe_zero_noise"] = true;
    doc["warning"] = kZeroNoiseBanner;
  }
}

// Null for stdin ("" or "-").
std::unique_ptr<std::istream> OpenInput(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto file = std::make_unique<std::ifstream>(path);
  if (!*file) throw std::invalid_argument("cannot open '" + path + "'");
  return file;
}

Dataset ReadInputData(const std::string& path, std::istream& in) {
  const auto file = OpenInput(path);
  Dataset data = ReadDataset(file ? *file : in);
  if (data.empty()) throw std::invalid_argument("empty input");
  return data;
}

bool PrintSuggestion(const std::vector<double>& suggest, std::ostream& out) {
  if (suggest.empty()) return false;
  const double n = suggest[0];
  if (!(n >= 1.0) || n != std::floor(n)) {
    throw std::invalid_argument("--suggest-bounds n must be a positive integer");
  }
  if (!(suggest[2] > 0.0)) {
    throw std::invalid_argument("--suggest-bounds sigma0 must be positive");
  }
  const SuggestedBounds b =
      RecommendBounds(static_cast<int64_t>(n), suggest[1], suggest[2]);
  json doc;
  doc["lower"] = b.lower;
  doc["upper"] = b.upper;
  out << doc.dump() << "\n";
  return true;
}

json WarningsJson(const std::vector<std::string>& warnings) {
  json arr = json::array();
  for (const auto& w : warnings) arr.push_back(w);
  return arr;
}

int CmdEstimate(const EstimateOptions& opts, std::istream& in,
                std::ostream& out, std::ostream& err) {
  if (PrintSuggestion(opts.suggest, out)) return kExitOk;
  RequireRelease(opts.release);
  const PrivacyKind kind = ParsePrivacyKind(opts.release.kind);
  const BudgetSplit split = ParseBudgetSplit(opts.split);
  const QuantileGridParams grid = ResolveGrid(opts.grid);
  const PrivacyBudget budget = SplitBudget(*opts.release.budget, kind, split);
  // Validate policy parameters before touching the data so that bad flags
  // fail the same way regardless of input.
  if (!(opts.eta >= 0.0 && opts.eta < 0.5)) {
    throw std::invalid_argument("--eta must lie in [0, 1/2)");
  }
  if (!(opts.c > 0.0)) throw std::invalid_argument("--C must be positive");
  const Dataset data = ReadInputData(opts.input, in);
  RandomStream stream = MakeStream(opts.release, err);

  PrivateEstimate est;
  if (opts.mode == "practical") {
    est = PmwMeanPractical(data, opts.c, opts.eta, grid, budget, stream);
  } else if (opts.mode == "split") {
    est = PmwMeanSplit(data, PracticalClip{opts.c, opts.eta}, grid, budget,
                       stream);
  } else {
    est = PmwMeanSplit(data, TheoreticalClip{opts.eta, opts.delta}, grid,
                       budget, stream);
  }

  json doc;
  LabelZeroNoise(opts.release, doc);
  doc["value"] = est.value;
  doc["clip_lo"] = est.clip_interval.lo;
  doc["clip_hi"] = est.clip_interval.hi;
  doc["noise_scale"] = est.noise_scale;
  doc["total_budget_strict"] = est.total_budget_strict;
  doc["total_budget_literal"] = est.total_budget_literal;
  doc["clip_level"] = est.clip_level;
  doc["kind"] = PrivacyKindName(kind);
  doc["split"] = BudgetSplitName(split);
  doc["mode"] = opts.mode;
  doc["warnings"] = WarningsJson(est.warnings);
  out << doc.dump() << "\n";
  return kExitOk;
}

int CmdQuantile(const QuantileOptions& opts, std::istream& in,
                std::ostream& out, std::ostream& err) {
  if (PrintSuggestion(opts.suggest, out)) return kExitOk;
  RequireRelease(opts.release);
  const PrivacyKind kind = ParsePrivacyKind(opts.release.kind);
  const QuantileGridParams grid = ResolveGrid(opts.grid);
  if (!(opts.q > 0.0 && opts.q <= 1.0)) {
    throw std::invalid_argument("--q must lie in (0, 1]");
  }
  const Dataset data = ReadInputData(opts.input, in);
  RandomStream stream = MakeStream(opts.release, err);
  // The search spends b1 + b2; split the total evenly.
  const double half = *opts.release.budget / 2.0;
  const PrivateQuantileResult r =
      PrivateQuantile(data, opts.q, QuantileBudget{half, half, kind}, grid,
                      stream);
  if (r.hit_cap) throw GridExhaustedError();

  json doc;
  LabelZeroNoise(opts.release, doc);
  doc["value"] = r.value;
  doc["q"] = opts.q;
  doc["steps_taken"] = r.steps_taken;
  doc["negated"] = r.negated;
  doc["total_budget"] = *opts.release.budget;
  doc["kind"] = PrivacyKindName(kind);
  out << doc.dump() << "\n";
  return kExitOk;
}

int CmdSimulate(const SimulateOptions& opts, std::ostream& out,
                std::ostream& err) {
  std::ifstream config(opts.config);
  if (!config) {
    throw std::invalid_argument("cannot open config '" + opts.config + "'");
  }
  ExperimentGrid grid = ParseGridConfig(config);
  if (opts.seed) grid.base_seed = *opts.seed;
  grid.Validate();
  if (opts.jobs == 0) throw std::invalid_argument("--jobs must be >= 1");

  const std::vector<ResultRow> rows = RunGrid(grid, opts.jobs);
  for (const ResultRow& row : rows) {
    if (row.flagged) {
      err << "warning: cell " << row.population << " n=" << row.n
          << " rho=" << row.budget << " " << row.policy << " "
          << row.estimator << " failed " << row.failed << " trials ("
          << row.first_error << ")\n";
    }
  }
  if (opts.output.empty() || opts.output == "-") {
    WriteResultsCsv(rows, out);
  } else {
    std::ofstream csv(opts.output);
    if (!csv) throw std::invalid_argument("cannot write '" + opts.output + "'");
    WriteResultsCsv(rows, csv);
    std::ofstream meta(opts.output + ".meta.json");
    if (!meta) {
      throw std::invalid_argument("cannot write '" + opts.output +
                                  ".meta.json'");
    }
    meta << grid.Fingerprint() << "\n";
  }
  if (!opts.jsonl.empty()) {
    std::ofstream jsonl(opts.jsonl);
    if (!jsonl) throw std::invalid_argument("cannot write '" + opts.jsonl + "'");
    WriteResultsJsonl(rows, jsonl);
  }
  return kExitOk;
}

int CmdSsa(const SsaOptions& opts, std::istream& in, std::ostream& out,
           std::ostream& err) {
  RequireRelease(opts.release);
  const PrivacyKind kind = ParsePrivacyKind(opts.release.kind);
  if (opts.m.has_value() == opts.k.has_value()) {
    throw std::invalid_argument("give exactly one of --m and --k");
  }

  CsvTable table;
  if (!opts.demo.empty()) {
    if (opts.demo.size() != 2 || opts.demo[0] == 0 || opts.demo[1] == 0) {
      throw std::invalid_argument("--demo takes SUBJECTS VISITS, both >= 1");
    }
    // The synthetic data is a public fixture, not the protected input, so it
    // draws from its own stream.
    RandomStream demo_stream(*opts.release.seed, 1);
    table = MakeLongitudinalDemo(opts.demo[0], opts.demo[1], demo_stream);
  } else {
    const auto file = OpenInput(opts.input);
    table = ReadCsv(file ? *file : in);
  }
  if (table.rows.empty()) throw std::invalid_argument("empty input");

  Statistic<Row> stat;
  std::vector<std::string> names;
  if (!opts.column.empty()) {
    if (!opts.y.empty() || !opts.x.empty()) {
      throw std::invalid_argument("--column excludes --y/--x");
    }
    stat = MeanStatistic(table.ColumnIndex(opts.column));
    names.push_back("mean_" + opts.column);
  } else {
    if (opts.y.empty() || opts.x.empty()) {
      throw std::invalid_argument("give --column, or --y with --x");
    }
    std::vector<std::size_t> xs;
    names.push_back("intercept");
    for (const auto& name : opts.x) {
      xs.push_back(table.ColumnIndex(name));
      names.push_back(name);
    }
    names.push_back("residual_variance");
    stat = OlsStatistic(table.ColumnIndex(opts.y), std::move(xs));
  }

  AggregatorConfig agg;
  if (opts.aggregator == "pmw") {
    agg = PmwAggregator{opts.c, opts.eta, ResolveGrid(opts.grid), kind,
                        ParseBudgetSplit(opts.split)};
  } else {
    if (!opts.grid.lower || !opts.grid.upper) {
      throw std::invalid_argument("--lower and --upper are required");
    }
    agg = ClippedMeanAggregator{*opts.grid.lower, *opts.grid.upper, kind};
  }

  RandomStream stream = MakeStream(opts.release, err);
  const std::span<const Row> records(table.rows);
  const SsaResult result =
      opts.m ? RunSsa(records, stat, *opts.m, agg, *opts.release.budget, stream)
             : RunSsaWithGroupSize(records, stat, *opts.k, agg,
                                   *opts.release.budget, stream);

  json doc;
  LabelZeroNoise(opts.release, doc);
  json estimates = json::object();
  for (std::size_t j = 0; j < names.size(); ++j) {
    estimates[names[j]] = result.estimates[j];
  }
  doc["estimates"] = estimates;
  doc["m"] = result.plan.m;
  doc["k"] = result.plan.k;
  doc["dropped"] = result.plan.dropped;
  doc["total_budget"] = result.total_budget;
  doc["kind"] = PrivacyKindName(kind);
  doc["aggregator"] = opts.aggregator;
  doc["warnings"] = WarningsJson(result.warnings);
  out << doc.dump() << "\n";
  return kExitOk;
}

double Need(const BoundsOptions& opts, const std::string& key) {
  const auto it = opts.values.find(key);
  if (it == opts.values.end()) {
    throw std::invalid_argument("bounds " + opts.name + " requires --" + key);
  }
  return it->second;
}

double Maybe(const BoundsOptions& opts, const std::string& key,
             double fallback) {
  const auto it = opts.values.find(key);
  return it == opts.values.end() ? fallback : it->second;
}

int64_t NeedCount(const BoundsOptions& opts, const std::string& key) {
  const double v = Need(opts, key);
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw std::invalid_argument("--" + key + " must be a positive integer");
  }
  return static_cast<int64_t>(v);
}

DistributionOracle MakeOracle(const BoundsOptions& opts) {
  const auto& p = opts.dist_params;
  auto param = [&](std::size_t i, double fallback) {
    return i < p.size() ? p[i] : fallback;
  };
  if (opts.dist == "uniform") {
    return DistributionOracle::Uniform(param(0, 0.0), param(1, 1.0));
  }
  if (opts.dist == "exponential") {
    return DistributionOracle::Exponential(param(0, 1.0));
  }
  if (opts.dist == "gaussian") {
    return DistributionOracle::Gaussian(param(0, 0.0), param(1, 1.0));
  }
  return DistributionOracle::StudentT(param(0, 3.0));
}

int CmdBounds(const BoundsOptions& opts, std::ostream& out) {
  json doc;
  doc["name"] = opts.name;
  const std::string& name = opts.name;
  if (name == "zeta") {
    const auto n = static_cast<std::size_t>(NeedCount(opts, "n"));
    doc["value"] = ComputeZeta(
        n, Maybe(opts, "eta", 0), Maybe(opts, "delta", 1.0 / n),
        Need(opts, "lower"), Need(opts, "upper"), Need(opts, "beta"));
  } else if (name == "practical-clip-level") {
    doc["value"] = PracticalClipLevel(
        static_cast<std::size_t>(NeedCount(opts, "n")), Need(opts, "C"),
        Maybe(opts, "eta", 0));
  } else if (name == "grid-coarseness-limit") {
    doc["distribution"] = MakeOracle(opts).name;
    doc["value"] = GridCoarsenessLimit(MakeOracle(opts), Need(opts, "zeta"),
                                       Need(opts, "lower"), Need(opts, "upper"));
  } else if (name == "aggregation-envelope") {
    doc["value"] = AggregationEnvelope(
        NeedCount(opts, "m"), Maybe(opts, "eta", 0), Need(opts, "delta"),
        Need(opts, "beta"), Need(opts, "upper"), Need(opts, "lower"),
        Need(opts, "e3"));
  } else if (name == "sample-complexity") {
    doc["value"] = SampleComplexity(
        Need(opts, "t"), Need(opts, "sigma"), Need(opts, "delta"),
        Need(opts, "lower"), Need(opts, "upper"), Need(opts, "beta"),
        Need(opts, "e3"), Maybe(opts, "K", 1.0));
  } else if (name == "trimmed-mean-limit-exp") {
    doc["value"] = TrimmedMeanLimitExp(Need(opts, "p"));
  } else {  // recommend-bounds
    const SuggestedBounds b =
        RecommendBounds(NeedCount(opts, "n"), Need(opts, "mu0"),
                        Need(opts, "sigma0"), Maybe(opts, "margin", 2.0));
    doc["lower"] = b.lower;
    doc["upper"] = b.upper;
  }
  out << doc.dump() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Private modified winsorized mean estimation"};
  app.name("pmw");
  app.require_subcommand(1);

  EstimateOptions est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Private mean of one column of numbers (stdin or --input)");
  AddReleaseOptions(estimate, est.release);
  AddGridOptions(estimate, est.grid);
  AddSuggestOption(estimate, est.suggest);
  estimate->add_option("--input", est.input, "Data file; '-' or unset: stdin");
  estimate->add_option("--mode", est.mode, "Estimator variant")
      ->check(CLI::IsMember({"practical", "split", "theoretical"}));
  estimate->add_option("--C", est.c, "Clip-level constant C (C/n vs eta)");
  estimate->add_option("--eta", est.eta, "Contamination fraction");
  estimate->add_option("--delta", est.delta,
                       "Failure probability for --mode theoretical");
  estimate->add_option("--split", est.split, "Budget split")
      ->check(CLI::IsMember({"strict", "literal"}));

  QuantileOptions qnt;
  CLI::App* quantile =
      app.add_subcommand("quantile", "Private quantile of one column");
  AddReleaseOptions(quantile, qnt.release);
  AddGridOptions(quantile, qnt.grid);
  AddSuggestOption(quantile, qnt.suggest);
  quantile->add_option("--input", qnt.input, "Data file; '-' or unset: stdin");
  quantile->add_option("--q", qnt.q, "Quantile level in (0, 1]");

  SimulateOptions sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a replication grid to CSV");
  simulate->add_option("--config", sim.config, "Grid configuration file")
      ->required();
  simulate->add_option("--output", sim.output,
                       "CSV path (a .meta.json sidecar is written next to "
                       "it); unset: stdout");
  simulate->add_option("--jsonl", sim.jsonl, "Also write JSON lines here");
  simulate->add_option("--jobs", sim.jobs, "Worker threads");
  simulate->add_option("--seed", sim.seed, "Override the config seed");

  SsaOptions ssa_opts;
  CLI::App* ssa =
      app.add_subcommand("ssa", "Subsample-and-aggregate over CSV records");
  AddReleaseOptions(ssa, ssa_opts.release);
  AddGridOptions(ssa, ssa_opts.grid);
  ssa->add_option("--input", ssa_opts.input, "CSV with header; unset: stdin");
  ssa->add_option("--demo", ssa_opts.demo,
                  "Use synthetic longitudinal data: SUBJECTS VISITS")
      ->expected(2);
  ssa->add_option("--y", ssa_opts.y, "Response column for OLS");
  ssa->add_option("--x", ssa_opts.x, "Covariate columns for OLS")
      ->delimiter(',');
  ssa->add_option("--column", ssa_opts.column, "Column for a mean statistic");
  ssa->add_option("--m", ssa_opts.m, "Number of groups");
  ssa->add_option("--k", ssa_opts.k, "Group size (m = floor(N / k))");
  ssa->add_option("--aggregator", ssa_opts.aggregator, "Aggregator")
      ->check(CLI::IsMember({"pmw", "clipped"}));
  ssa->add_option("--C", ssa_opts.c, "PMW clip-level constant");
  ssa->add_option("--eta", ssa_opts.eta, "PMW contamination fraction");
  ssa->add_option("--split", ssa_opts.split, "Per-coordinate budget split")
      ->check(CLI::IsMember({"strict", "literal"}));

  BoundsOptions bnd;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Evaluate a closed-form bound by name");
  bounds
      ->add_option("name", bnd.name, "Bound to evaluate")
      ->required()
      ->check(CLI::IsMember({"zeta", "practical-clip-level", "grid-coarseness-limit",
                             "aggregation-envelope", "sample-complexity",
                             "trimmed-mean-limit-exp", "recommend-bounds"}));
  // Numeric inputs are collected into a map; only those the bound needs are
  // read.
  std::map<std::string, std::optional<double>> numeric;
  for (const char* key :
       {"n", "eta", "delta", "lower", "upper", "beta", "C", "zeta", "m", "e3",
        "t", "sigma", "K", "p", "mu0", "sigma0", "margin"}) {
    bounds->add_option(std::string("--") + key, numeric[key]);
  }
  bounds->add_option("--dist", bnd.dist, "Oracle law for grid-coarseness-limit")
      ->check(CLI::IsMember({"uniform", "exponential", "gaussian",
                             "student_t"}));
  bounds->add_option("--dist-params", bnd.dist_params,
                     "Oracle parameters, comma separated")
      ->delimiter(',');

  for (CLI::App* sub : {estimate, quantile, simulate, ssa, bounds}) {
    BindEnvironment(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*estimate) return CmdEstimate(est, in, out, err);
    if (*quantile) return CmdQuantile(qnt, in, out, err);
    if (*simulate) return CmdSimulate(sim, out, err);
    if (*ssa) return CmdSsa(ssa_opts, in, out, err);
    for (const auto& [key, value] : numeric) {
      if (value) bnd.values[key] = *value;
    }
    return CmdBounds(bnd, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace pmw

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cpedb/experiment.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cpedb/borda_explore.h"
#include "cpedb/condorcet_explore.h"
#include "cpedb/condorcet_oracle.h"
#include "cpedb/errors.h"
#include "json_util.h"

namespace cpedb {
namespace {

using internal::FailAt;
using internal::Json;
using internal::KeyLines;

constexpr std::string_view kConfig = "config";
constexpr std::string_view kReport = "report";
constexpr uint64_t kSamplerSalt = 0x9e3779b97f4a7c15ULL;

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kAlgorithms =
    {{{Algorithm::kBordaPac, "borda-pac"},
      {Algorithm::kBordaExact, "borda-exact"},
      {Algorithm::kCarCond, "car-cond"},
      {Algorithm::kCarVerify, "car-verify"},
      {Algorithm::kCarParallel, "car-parallel"},
      {Algorithm::kOracleEval, "oracle-eval"}}};

std::string AlgorithmList() {
  std::string out;
  for (const auto& [a, name] : kAlgorithms) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

bool NeedsEpsilon(Algorithm a) {
  return a == Algorithm::kBordaPac || a == Algorithm::kOracleEval;
}

bool UsesDelta0(Algorithm a) {
  return a == Algorithm::kCarVerify || a == Algorithm::kCarParallel;
}

// First violated range, as (config key, message).
std::optional<std::pair<std::string, std::string>> FindViolation(
    const ExperimentConfig& c) {
  using V = std::pair<std::string, std::string>;
  if (c.trials < 1) return V{"trials", "trials must be >= 1"};
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    return V{"delta", "delta must lie in (0, 1)"};
  }
  if (NeedsEpsilon(c.algorithm)) {
    if (!c.epsilon) {
      return V{"algorithm", std::string(AlgorithmName(c.algorithm)) +
                                " requires 'epsilon'"};
    }
    if (!(*c.epsilon > 0.0) || !std::isfinite(*c.epsilon)) {
      return V{"epsilon", "epsilon must be positive and finite"};
    }
  }
  if (c.sample_cap < 1) return V{"sample_cap", "sample_cap must be >= 1"};
  if (!(c.scale >= 0.0 && c.scale <= 1.0)) {
    return V{"scale", "scale must lie in [0, 1]"};
  }
  if (c.edge_cap < 1) return V{"edge_cap", "edge_cap must be >= 1"};
  if (UsesDelta0(c.algorithm)) {
    if (!(c.delta0 > 0.0 && c.delta0 < 1.0)) {
      return V{"delta0", "delta0 must lie in (0, 1)"};
    }
    if (!(c.delta < c.delta0)) {
      return V{"delta", "delta must be below delta0 (" +
                            std::to_string(c.delta0) + ")"};
    }
  }
  if (!(c.sampler.eta >= 0.0 && c.sampler.eta < 1.0)) {
    return V{"sampler.eta", "sampler.eta must lie in [0, 1)"};
  }
  if (c.sampler.mcmc_steps < 0) {
    return V{"sampler.mcmc_steps", "sampler.mcmc_steps must be >= 0"};
  }
  if (c.oracle_iteration_cap < 1) {
    return V{"oracle.iteration_cap", "oracle.iteration_cap must be >= 1"};
  }
  return std::nullopt;
}

double NumberAt(const Json& node, const char* key, const KeyLines& lines,
                const std::string& path) {
  if (!node[key].is_number()) {
    FailAt(kConfig, lines.Line(path), "'" + path + "' must be a number");
  }
  return node[key].get<double>();
}

int64_t IntegerAt(const Json& node, const char* key, const KeyLines& lines,
                  const std::string& path) {
  if (!node[key].is_number_integer()) {
    FailAt(kConfig, lines.Line(path), "'" + path + "' must be an integer");
  }
  return node[key].get<int64_t>();
}

void RejectUnknown(const Json& node,
                   std::initializer_list<std::string_view> keys,
                   const KeyLines& lines, const std::string& prefix) {
  for (const auto& [key, value] : node.items()) {
    if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
    std::string expected;
    for (std::string_view k : keys) {
      if (!expected.empty()) expected += ", ";
      expected += k;
    }
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    FailAt(kConfig, lines.Line(path),
           "unknown key '" + path + "' (expected " + expected + ")");
  }
}

ExperimentConfig ConfigFromJson(const Json& root, const KeyLines& lines,
                                const std::string& base_dir) {
  if (!root.is_object()) FailAt(kConfig, 1, "top level must be an object");
  RejectUnknown(root,
                {"instance", "algorithm", "delta", "epsilon", "sampler",
                 "trials", "base_seed", "sample_cap", "scale", "edge_cap",
                 "delta0", "oracle"},
                lines, "");
  ExperimentConfig c;
  if (!root.contains("instance") || !root["instance"].is_string()) {
    FailAt(kConfig, lines.Line("instance"),
           "'instance' must be a path string");
  }
  c.instance = root["instance"].get<std::string>();
  if (!base_dir.empty() && std::filesystem::path(c.instance).is_relative()) {
    c.instance = (std::filesystem::path(base_dir) / c.instance).string();
  }
  if (!root.contains("algorithm") || !root["algorithm"].is_string()) {
    FailAt(kConfig, lines.Line("algorithm"),
           "'algorithm' must be one of: " + AlgorithmList());
  }
  try {
    c.algorithm = ParseAlgorithm(root["algorithm"].get<std::string>());
  } catch (const Error&) {
    FailAt(kConfig, lines.Line("algorithm"),
           "unknown algorithm '" + root["algorithm"].get<std::string>() +
               "'; valid choices: " + AlgorithmList());
  }
  if (root.contains("delta")) c.delta = NumberAt(root, "delta", lines, "delta");
  if (root.contains("epsilon") && !root["epsilon"].is_null()) {
    c.epsilon = NumberAt(root, "epsilon", lines, "epsilon");
  }
  if (root.contains("trials")) {
    const int64_t t = IntegerAt(root, "trials", lines, "trials");
    if (t < 1 || t > std::numeric_limits<int>::max()) {
      FailAt(kConfig, lines.Line("trials"), "trials must be >= 1");
    }
    c.trials = static_cast<int>(t);
  }
  if (root.contains("base_seed")) {
    if (!root["base_seed"].is_number_unsigned()) {
      FailAt(kConfig, lines.Line("base_seed"),
             "'base_seed' must be a non-negative integer");
    }
    c.base_seed = root["base_seed"].get<uint64_t>();
  }
  if (root.contains("sample_cap")) {
    c.sample_cap = IntegerAt(root, "sample_cap", lines, "sample_cap");
  }
  if (root.contains("scale")) c.scale = NumberAt(root, "scale", lines, "scale");
  if (root.contains("edge_cap")) {
    const int64_t cap = IntegerAt(root, "edge_cap", lines, "edge_cap");
    if (cap < 1 || cap > 62) {
      FailAt(kConfig, lines.Line("edge_cap"), "edge_cap must lie in [1, 62]");
    }
    c.edge_cap = static_cast<int>(cap);
  }
  if (root.contains("delta0")) {
    c.delta0 = NumberAt(root, "delta0", lines, "delta0");
  }
  if (root.contains("sampler")) {
    const Json& s = root["sampler"];
    if (!s.is_object()) {
      FailAt(kConfig, lines.Line("sampler"), "'sampler' must be an object");
    }
    RejectUnknown(s, {"mode", "eta", "mcmc_steps"}, lines, "sampler");
    if (s.contains("mode")) {
      const std::string mode =
          s["mode"].is_string() ? s["mode"].get<std::string>() : "";
      if (mode == "exact") {
        c.sampler.mode = SamplerMode::kExact;
      } else if (mode == "mcmc") {
        c.sampler.mode = SamplerMode::kMcmc;
      } else {
        FailAt(kConfig, lines.Line("sampler.mode"),
               "sampler.mode must be one of: exact, mcmc");
      }
    }
    if (s.contains("eta")) {
      c.sampler.eta = NumberAt(s, "eta", lines, "sampler.eta");
    }
    if (s.contains("mcmc_steps")) {
      c.sampler.mcmc_steps =
          IntegerAt(s, "mcmc_steps", lines, "sampler.mcmc_steps");
    }
  }
  if (root.contains("oracle")) {
    const Json& o = root["oracle"];
    if (!o.is_object()) {
      FailAt(kConfig, lines.Line("oracle"), "'oracle' must be an object");
    }
    RejectUnknown(o, {"c1", "c2", "iteration_cap"}, lines, "oracle");
    if (o.contains("c1")) {
      c.c1 = internal::ConstraintPairFromJson(o["c1"], kConfig, lines,
                                              "oracle.c1");
    }
    if (o.contains("c2")) {
      c.c2 = internal::ConstraintPairFromJson(o["c2"], kConfig, lines,
                                              "oracle.c2");
    }
    if (o.contains("iteration_cap")) {
      c.oracle_iteration_cap =
          IntegerAt(o, "iteration_cap", lines, "oracle.iteration_cap");
    }
  }
  if (const auto violation = FindViolation(c)) {
    FailAt(kConfig, lines.Line(violation->first), violation->second);
  }
  return c;
}

Json ConstraintToJson(const ConstraintPair& c) {
  return {{"accepted", c.accepted}, {"rejected", c.rejected}};
}

Json ConfigToJsonValue(const ExperimentConfig& c) {
  Json j;
  j["instance"] = c.instance;
  j["algorithm"] = AlgorithmName(c.algorithm);
  j["delta"] = c.delta;
  j["epsilon"] = c.epsilon ? Json(*c.epsilon) : Json(nullptr);
  j["sampler"] = {
      {"mode", c.sampler.mode == SamplerMode::kExact ? "exact" : "mcmc"},
      {"eta", c.sampler.eta},
      {"mcmc_steps", c.sampler.mcmc_steps}};
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["sample_cap"] = c.sample_cap;
  j["scale"] = c.scale;
  j["edge_cap"] = c.edge_cap;
  j["delta0"] = c.delta0;
  j["oracle"] = {{"c1", ConstraintToJson(c.c1)},
                 {"c2", ConstraintToJson(c.c2)},
                 {"iteration_cap", c.oracle_iteration_cap}};
  return j;
}

// JSON has no infinities or NaN.
Json EncodeReal(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double DecodeReal(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::kParseError, "report: bad real '" + s + "'");
  }
  return j.get<double>();
}

Json EncodeReals(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(EncodeReal(x));
  return out;
}

std::vector<double> DecodeReals(const Json& j) {
  std::vector<double> out;
  for (const Json& x : j) out.push_back(DecodeReal(x));
  return out;
}

Json EncodeMatching(const std::optional<Matching>& m) {
  if (!m) return nullptr;
  return m->edge_ids();
}

std::optional<Matching> DecodeMatching(const Json& j,
                                       const BipartiteGraph& graph) {
  if (j.is_null()) return std::nullopt;
  return Matching(graph, j.get<std::vector<int>>());
}

Json GapReportToJsonValue(const GapReport& r) {
  Json pairs = Json::array();
  for (const PairGap& p : r.condorcet_pair_gap) {
    pairs.push_back({{"e1", p.e1}, {"e2", p.e2}, {"gap", EncodeReal(p.gap)}});
  }
  return {{"num_matchings", r.num_matchings},
          {"width", r.width},
          {"borda_winner", EncodeMatching(r.borda_winner)},
          {"edge_reward", EncodeReals(r.edge_reward)},
          {"borda_gap", EncodeReals(r.borda_gap)},
          {"borda_gap_min", EncodeReal(r.borda_gap_min)},
          {"borda_hardness", EncodeReal(r.borda_hardness)},
          {"condorcet_winner", EncodeMatching(r.condorcet_winner)},
          {"condorcet_gap", EncodeReals(r.condorcet_gap)},
          {"condorcet_pair_gap", pairs},
          {"verification_gap", EncodeReals(r.verification_gap)},
          {"verification_hardness", EncodeReal(r.verification_hardness)}};
}

GapReport GapReportFromJson(const Json& j, const BipartiteGraph& graph) {
  GapReport r;
  r.num_matchings = j.at("num_matchings").get<int>();
  r.width = j.at("width").get<int>();
  r.borda_winner = DecodeMatching(j.at("borda_winner"), graph);
  r.edge_reward = DecodeReals(j.at("edge_reward"));
  r.borda_gap = DecodeReals(j.at("borda_gap"));
  r.borda_gap_min = DecodeReal(j.at("borda_gap_min"));
  r.borda_hardness = DecodeReal(j.at("borda_hardness"));
  r.condorcet_winner = DecodeMatching(j.at("condorcet_winner"), graph);
  r.condorcet_gap = DecodeReals(j.at("condorcet_gap"));
  for (const Json& p : j.at("condorcet_pair_gap")) {
    r.condorcet_pair_gap.push_back(
        {p.at("e1").get<int>(), p.at("e2").get<int>(),
         DecodeReal(p.at("gap"))});
  }
  r.verification_gap = DecodeReals(j.at("verification_gap"));
  r.verification_hardness = DecodeReal(j.at("verification_hardness"));
  return r;
}

std::string ShortestReal(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

bool IsBudgetStop(std::string_view reason) {
  return reason == "budget-exceeded" || reason == "oracle-budget-exceeded";
}

std::string StopReasonForError(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kBudgetExceeded:
      return "budget-exceeded";
    case ErrorCode::kOracleBudgetExceeded:
      return "oracle-budget-exceeded";
    default: {
      std::string name(ErrorCodeName(e.code()));
      std::string out;
      for (char ch : name) {
        if (std::isupper(static_cast<unsigned char>(ch))) {
          if (!out.empty()) out.push_back('-');
          out.push_back(static_cast<char>(std::tolower(ch)));
        } else {
          out.push_back(ch);
        }
      }
      return out;
    }
  }
}

double BordaOf(const std::vector<int>& edges, const GapReport& truth,
               int positions) {
  double sum = 0.0;
  for (int e : edges) sum += truth.edge_reward[e];
  return sum / positions;
}

std::optional<bool> CondorcetCorrect(const std::optional<GapReport>& truth,
                                     bool answered,
                                     const std::vector<int>& edges) {
  if (!truth) return std::nullopt;
  if (!truth->condorcet_winner) return !answered;
  return answered && edges == truth->condorcet_winner->edge_ids();
}

void RunBorda(const ExperimentConfig& config, const Instance& instance,
              const std::optional<GapReport>& truth, DuelEnvironment& env,
              uint64_t seed, TrialReport* out) {
  BordaOptions options;
  options.delta = config.delta;
  if (config.epsilon) options.epsilon = *config.epsilon;
  options.sampler = config.sampler;
  options.sampler.seed = seed ^ kSamplerSalt;
  const bool pac = config.algorithm == Algorithm::kBordaPac;
  const BordaResult r =
      pac ? ClucbBordaPac(env, options) : ClucbBordaExact(env, options);
  out->stop_reason = BordaStopReasonName(r.trace.stop_reason);
  out->samples = r.trace.samples;
  const bool answered = r.trace.stop_reason != BordaStopReason::kBudgetExceeded;
  if (answered) out->matching = r.matching.edge_ids();
  if (!truth || !truth->borda_winner) return;
  if (!answered) {
    out->correct = false;
  } else if (pac) {
    const int l = instance.graph.num_positions();
    out->correct = BordaOf(out->matching, *truth, l) >=
                   BordaOf(truth->borda_winner->edge_ids(), *truth, l) -
                       options.epsilon - kWinnerTieTolerance;
  } else {
    out->correct = out->matching == truth->borda_winner->edge_ids();
  }
}

void RunOracleEval(const ExperimentConfig& config, const Instance& instance,
                   TrialReport* out) {
  OracleOptions options;
  options.iteration_cap = config.oracle_iteration_cap;
  const double eps = *config.epsilon;
  const PairwiseMatrix& q = instance.preference.matrix();
  const OracleResult r =
      SolveMinimax(instance.graph, config.c1, config.c2, q, eps, options);
  out->oracle_iterations = r.iterations;
  if (r.value < 0.0) {
    out->stop_reason = "max-side-infeasible";
    return;
  }
  out->value = r.value;
  out->stop_reason = r.certified ? "certified" : "horizon";
  try {
    out->reference_value =
        ExactGameValue(instance.graph, config.c1, config.c2, q,
                       config.edge_cap);
    out->correct = std::abs(r.value - *out->reference_value) <= eps;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInstanceTooLarge) throw;
  }
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  for (const auto& [a, name] : kAlgorithms) {
    if (a == algorithm) return name;
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgorithms) {
    if (n == name) return a;
  }
  throw Error(ErrorCode::kParseError,
              "unknown algorithm '" + std::string(name) +
                  "'; valid choices: " + AlgorithmList());
}

ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const std::string& base_dir) {
  const Json root = internal::ParseJson(text, kConfig);
  return ConfigFromJson(root, KeyLines(text), base_dir);
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  const std::string text = ReadFile(path);
  return ParseExperimentConfig(
      text, std::filesystem::path(path).parent_path().string());
}

void ValidateExperimentConfig(const ExperimentConfig& config) {
  if (const auto violation = FindViolation(config)) {
    throw Error(ErrorCode::kParseError,
                std::string(kConfig) + ": " + violation->second);
  }
}

std::string ExperimentConfigToJson(const ExperimentConfig& config) {
  return ConfigToJsonValue(config).dump(2) + "\n";
}

TrialReport RunTrial(const ExperimentConfig& config, const Instance& instance,
                     const std::optional<GapReport>& truth, uint64_t seed) {
  TrialReport out;
  out.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  DuelEnvironment env(instance.graph, instance.preference, seed,
                      config.sample_cap);
  out.environment = env.metadata();
  try {
    switch (config.algorithm) {
      case Algorithm::kBordaPac:
      case Algorithm::kBordaExact:
        RunBorda(config, instance, truth, env, seed, &out);
        break;
      case Algorithm::kCarCond: {
        CarCondOptions options;
        options.delta = config.delta;
        const CarCond run = RunCarCond(env, options);
        out.stop_reason = CarStatusName(run.status());
        out.samples = run.trace().samples;
        out.oracle_iterations = run.trace().oracle_iterations;
        const bool answered = run.status() == CarStatus::kIdentified;
        if (answered) out.matching = run.result().edge_ids();
        out.correct = CondorcetCorrect(truth, answered, out.matching);
        break;
      }
      case Algorithm::kCarVerify: {
        CarVerifyOptions options;
        options.delta = config.delta;
        options.delta0 = config.delta0;
        CarVerify run(instance.graph, options);
        run.Run(env);
        out.stop_reason = CarStatusName(run.status());
        out.samples = run.samples();
        out.oracle_iterations = run.exploration().trace().oracle_iterations;
        const bool answered = run.status() == CarStatus::kIdentified;
        if (answered) out.matching = run.result().edge_ids();
        out.correct = CondorcetCorrect(truth, answered, out.matching);
        break;
      }
      case Algorithm::kCarParallel: {
        CarParallelOptions options;
        options.delta = config.delta;
        options.delta0 = config.delta0;
        const CarParallelResult run = RunCarParallel(env, options);
        out.stop_reason = CarStatusName(run.status);
        out.samples = run.samples;
        const bool answered = run.status == CarStatus::kIdentified;
        if (answered) out.matching = run.matching.edge_ids();
        out.correct = CondorcetCorrect(truth, answered, out.matching);
        break;
      }
      case Algorithm::kOracleEval:
        RunOracleEval(config, instance, &out);
        break;
    }
  } catch (const Error& e) {
    out.stop_reason = StopReasonForError(e);
    out.samples = env.total_samples();
    out.matching.clear();
    if (truth) out.correct = false;
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

std::pair<double, double> WilsonInterval(int k, int n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = static_cast<double>(k) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Aggregate Summarize(const std::vector<TrialReport>& trials) {
  Aggregate a;
  a.trials = static_cast<int>(trials.size());
  std::vector<int64_t> samples;
  for (const TrialReport& t : trials) {
    if (!t.correct) {
      ++a.unknown;
    } else if (*t.correct) {
      ++a.successes;
    } else {
      ++a.failures;
    }
    if (IsBudgetStop(t.stop_reason)) ++a.budget_failures;
    samples.push_back(t.samples);
  }
  const int known = a.successes + a.failures;
  if (known > 0) a.success_rate = static_cast<double>(a.successes) / known;
  std::tie(a.ci_low, a.ci_high) = WilsonInterval(a.successes, known);
  if (!samples.empty()) {
    std::sort(samples.begin(), samples.end());
    double total = 0.0;
    for (int64_t s : samples) total += static_cast<double>(s);
    a.samples_mean = total / static_cast<double>(samples.size());
    const size_t mid = samples.size() / 2;
    a.samples_median =
        samples.size() % 2 == 1
            ? static_cast<double>(samples[mid])
            : 0.5 * static_cast<double>(samples[mid - 1] + samples[mid]);
    a.samples_max = samples.back();
  }
  return a;
}

ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const Instance& instance) {
  ValidateExperimentConfig(config);
  Instance scaled{instance.name, instance.graph,
                  config.scale == 1.0 ? instance.preference
                                      : instance.preference.ScaledTowardHalf(
                                            instance.graph, config.scale),
                  instance.input_order};
  ExperimentReport report;
  report.config = config;
  report.instance_name = scaled.name;
  report.truth_hash = TruthHash(scaled.preference);
  try {
    report.truth =
        ComputeGaps(scaled.graph, scaled.preference, config.edge_cap);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInstanceTooLarge) throw;
  }
  for (int i = 0; i < config.trials; ++i) {
    report.trials.push_back(
        RunTrial(config, scaled, report.truth, config.base_seed + i));
  }
  std::sort(report.trials.begin(), report.trials.end(),
            [](const TrialReport& a, const TrialReport& b) {
              return a.seed < b.seed;
            });
  report.aggregate = Summarize(report.trials);
  return report;
}

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  return RunExperiment(config, LoadInstance(config.instance));
}

bool HasBudgetFailures(const ExperimentReport& report) {
  for (const TrialReport& t : report.trials) {
    if (IsBudgetStop(t.stop_reason)) return true;
  }
  return false;
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw Error(ErrorCode::kParseError, "unknown report format '" +
                                          std::string(name) +
                                          "'; valid choices: csv, json");
}

std::string ReportToCsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "seed,algorithm,delta,epsilon,samples,correct,stop_reason,wall_ms\n";
  const ExperimentConfig& c = report.config;
  for (const TrialReport& t : report.trials) {
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", t.wall_ms);
    out << t.seed << ',' << AlgorithmName(c.algorithm) << ','
        << ShortestReal(c.delta) << ','
        << (c.epsilon ? ShortestReal(*c.epsilon) : "") << ',' << t.samples
        << ',' << (!t.correct ? "unknown" : *t.correct ? "true" : "false")
        << ',' << t.stop_reason << ',' << wall << '\n';
  }
  return out.str();
}

std::string ReportToJson(const ExperimentReport& report) {
  Json trials = Json::array();
  for (const TrialReport& t : report.trials) {
    Json j;
    j["seed"] = t.seed;
    j["matching"] = t.matching;
    j["correct"] = t.correct ? Json(*t.correct) : Json(nullptr);
    j["samples"] = t.samples;
    j["wall_ms"] = t.wall_ms;
    j["stop_reason"] = t.stop_reason;
    j["environment"] = {{"seed", t.environment.seed},
                        {"generator", t.environment.generator},
                        {"truth_hash", t.environment.truth_hash}};
    j["oracle_iterations"] = t.oracle_iterations;
    j["value"] = t.value ? Json(*t.value) : Json(nullptr);
    j["reference_value"] =
        t.reference_value ? Json(*t.reference_value) : Json(nullptr);
    trials.push_back(std::move(j));
  }
  const Aggregate& a = report.aggregate;
  Json root;
  root["config"] = ConfigToJsonValue(report.config);
  root["instance_name"] = report.instance_name;
  root["truth_hash"] = report.truth_hash;
  root["truth"] =
      report.truth ? GapReportToJsonValue(*report.truth) : Json(nullptr);
  root["trials"] = std::move(trials);
  root["aggregate"] = {{"trials", a.trials},
                       {"successes", a.successes},
                       {"failures", a.failures},
                       {"unknown", a.unknown},
                       {"budget_failures", a.budget_failures},
                       {"success_rate", a.success_rate},
                       {"ci_low", a.ci_low},
                       {"ci_high", a.ci_high},
                       {"samples_mean", a.samples_mean},
                       {"samples_median", a.samples_median},
                       {"samples_max", a.samples_max}};
  return root.dump(2) + "\n";
}

ExperimentReport ReportFromJson(std::string_view text,
                                const BipartiteGraph& graph) {
  const Json root = internal::ParseJson(text, kReport);
  ExperimentReport r;
  try {
    const std::string config_text = root.at("config").dump();
    r.config = ParseExperimentConfig(config_text);
    r.instance_name = root.at("instance_name").get<std::string>();
    r.truth_hash = root.at("truth_hash").get<std::string>();
    if (!root.at("truth").is_null()) {
      r.truth = GapReportFromJson(root.at("truth"), graph);
    }
    for (const Json& j : root.at("trials")) {
      TrialReport t;
      t.seed = j.at("seed").get<uint64_t>();
      t.matching = j.at("matching").get<std::vector<int>>();
      if (!j.at("correct").is_null()) t.correct = j.at("correct").get<bool>();
      t.samples = j.at("samples").get<int64_t>();
      t.wall_ms = j.at("wall_ms").get<double>();
      t.stop_reason = j.at("stop_reason").get<std::string>();
      const Json& env = j.at("environment");
      t.environment = {env.at("seed").get<uint64_t>(),
                       env.at("generator").get<std::string>(),
                       env.at("truth_hash").get<std::string>()};
      t.oracle_iterations = j.at("oracle_iterations").get<int64_t>();
      if (!j.at("value").is_null()) t.value = j.at("value").get<double>();
      if (!j.at("reference_value").is_null()) {
        t.reference_value = j.at("reference_value").get<double>();
      }
      r.trials.push_back(std::move(t));
    }
    const Json& a = root.at("aggregate");
    r.aggregate.trials = a.at("trials").get<int>();
    r.aggregate.successes = a.at("successes").get<int>();
    r.aggregate.failures = a.at("failures").get<int>();
    r.aggregate.unknown = a.at("unknown").get<int>();
    r.aggregate.budget_failures = a.at("budget_failures").get<int>();
    r.aggregate.success_rate = a.at("success_rate").get<double>();
    r.aggregate.ci_low = a.at("ci_low").get<double>();
    r.aggregate.ci_high = a.at("ci_high").get<double>();
    r.aggregate.samples_mean = a.at("samples_mean").get<double>();
    r.aggregate.samples_median = a.at("samples_median").get<double>();
    r.aggregate.samples_max = a.at("samples_max").get<int64_t>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string(kReport) + ": " + e.what());
  }
  return r;
}

void EmitReport(const ExperimentReport& report, ReportFormat format,
                const std::string& path) {
  WriteFile(path, format == ReportFormat::kCsv ? ReportToCsv(report)
                                               : ReportToJson(report));
}

std::string GapReportToJson(const GapReport& report) {
  return GapReportToJsonValue(report).dump(2) + "\n";
}

}  // namespace cpedb

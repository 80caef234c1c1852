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
// explore: command-line front end for the experiment harness.
//
//   explore run --config cfg.json [--out report.csv] [--format csv|json]
//   explore truth --instance g.json [--json]
//   explore oracle-eval --instance g.json --eps 0.05 [--constraints JSON]
//
// Exit codes: 0 success, 1 runtime failure, 2 config or input error,
// 3 some trial ran out of budget.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpedb/condorcet_oracle.h"
#include "cpedb/errors.h"
#include "cpedb/experiment.h"
#include "cpedb/instance_io.h"
#include "cpedb/preference.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

bool IsInputError(const cpedb::Error& e) {
  switch (e.code()) {
    case cpedb::ErrorCode::kParseError:
    case cpedb::ErrorCode::kIoError:
    case cpedb::ErrorCode::kInvalidGraph:
    case cpedb::ErrorCode::kInvalidPreference:
    case cpedb::ErrorCode::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

std::string EdgeSet(const std::vector<int>& edges) {
  std::string out = "{";
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(edges[i]);
  }
  return out + "}";
}

std::string Real(double v) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct RunArgs {
  std::string config;
  std::string out;
  std::string format = "csv";
};

int Run(const RunArgs& args) {
  const cpedb::ExperimentConfig config =
      cpedb::LoadExperimentConfig(args.config);
  const cpedb::ReportFormat format = cpedb::ParseReportFormat(args.format);
  const cpedb::Instance instance = cpedb::LoadInstance(config.instance);
  const cpedb::ExperimentReport report =
      cpedb::RunExperiment(config, instance);
  const std::string text = format == cpedb::ReportFormat::kCsv
                               ? cpedb::ReportToCsv(report)
                               : cpedb::ReportToJson(report);
  if (args.out.empty() || args.out == "-") {
    std::cout << text;
  } else {
    cpedb::WriteFile(args.out, text);
  }
  const cpedb::Aggregate& a = report.aggregate;
  std::fprintf(stderr,
               "%s: %d trials, %d correct, %d wrong, %d unknown, "
               "success %.3f [%.3f, %.3f], samples mean %.1f median %.1f "
               "max %lld, budget failures %d\n",
               std::string(cpedb::AlgorithmName(config.algorithm)).c_str(),
               a.trials, a.successes, a.failures, a.unknown, a.success_rate,
               a.ci_low, a.ci_high, a.samples_mean, a.samples_median,
               static_cast<long long>(a.samples_max), a.budget_failures);
  return cpedb::HasBudgetFailures(report) ? kExitBudget : kExitOk;
}

struct TruthArgs {
  std::string instance;
  bool json = false;
  int edge_cap = cpedb::kDefaultEnumerationCap;
};

int Truth(const TruthArgs& args) {
  const cpedb::Instance inst = cpedb::LoadInstance(args.instance);
  const cpedb::GapReport r =
      cpedb::ComputeGaps(inst.graph, inst.preference, args.edge_cap);
  if (args.json) {
    std::cout << cpedb::GapReportToJson(r);
    return kExitOk;
  }
  const cpedb::BipartiteGraph& g = inst.graph;
  std::cout << "instance: " << (inst.name.empty() ? "-" : inst.name)
            << " (candidates " << g.num_candidates() << ", positions "
            << g.num_positions() << ", edges " << g.num_edges() << ")\n";
  std::cout << "canonical order of input edges:";
  for (int c : inst.input_order) std::cout << ' ' << c;
  std::cout << "\nmatchings: " << r.num_matchings << "\nwidth: " << r.width
            << "\n";
  if (r.borda_winner) {
    double score = 0.0;
    for (int e : r.borda_winner->edge_ids()) score += r.edge_reward[e];
    score /= g.num_positions();
    std::cout << "borda winner: " << EdgeSet(r.borda_winner->edge_ids())
              << " B = " << Real(score) << "\n";
  } else {
    std::cout << "borda winner: none (tie)\n";
  }
  std::cout << "condorcet winner: "
            << (r.condorcet_winner ? EdgeSet(r.condorcet_winner->edge_ids())
                                   : std::string("none"))
            << "\n";
  std::cout << "edge candidate position w borda_gap condorcet_gap "
               "verification_gap\n";
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto at = [&](const std::vector<double>& v) {
      return e < static_cast<int>(v.size()) ? Real(v[e]) : std::string("-");
    };
    std::cout << e << ' ' << g.candidate_of(e) << ' ' << g.position_of(e)
              << ' ' << at(r.edge_reward) << ' ' << at(r.borda_gap) << ' '
              << at(r.condorcet_gap) << ' ' << at(r.verification_gap)
              << "\n";
  }
  if (r.borda_winner) {
    std::cout << "H^B: " << Real(r.borda_hardness) << "\n";
  }
  if (r.condorcet_winner) {
    std::cout << "H^C_ver: " << Real(r.verification_hardness) << "\n";
  }
  return kExitOk;
}

struct OracleArgs {
  std::string instance;
  double eps = 0.05;
  std::string constraints = "{}";
  int64_t iteration_cap = cpedb::kDefaultOracleIterationCap;
};

int OracleEval(const OracleArgs& args) {
  const cpedb::Instance inst = cpedb::LoadInstance(args.instance);
  const auto [c1, c2] = cpedb::ParseConstraintPairs(args.constraints);
  if (!(args.eps > 0.0)) {
    throw cpedb::Error(cpedb::ErrorCode::kParseError, "--eps must be > 0");
  }
  cpedb::OracleOptions options;
  options.iteration_cap = args.iteration_cap;
  const cpedb::PairwiseMatrix& q = inst.preference.matrix();
  const cpedb::OracleResult r =
      cpedb::SolveMinimax(inst.graph, c1, c2, q, args.eps, options);
  if (r.value < 0.0) {
    std::cout << "value: infeasible (no matching satisfies c1)\n";
    return kExitOk;
  }
  std::cout << "value: " << Real(r.value) << "\nupper_bound: "
            << Real(r.upper_bound) << "\niterations: " << r.iterations
            << "\nprojection_calls: " << r.projection_calls
            << "\ncertified: " << (r.certified ? "yes" : "no") << "\n";
  try {
    const double exact = cpedb::ExactGameValue(inst.graph, c1, c2, q);
    std::cout << "exact: " << Real(exact) << "\nerror: "
              << Real(std::abs(r.value - exact)) << "\n";
  } catch (const cpedb::Error& e) {
    if (e.code() != cpedb::ErrorCode::kInstanceTooLarge) throw;
    std::cout << "exact: skipped (above enumeration cap)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial pure exploration for dueling bandits"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a seeded experiment");
  run->add_option("--config", run_args.config, "Experiment config (JSON)")
      ->required();
  run->add_option("--out", run_args.out, "Report path (default stdout)");
  run->add_option("--format", run_args.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));

  TruthArgs truth_args;
  CLI::App* truth =
      app.add_subcommand("truth", "Print winners, gaps, width and hardness");
  truth->add_option("--instance", truth_args.instance, "Instance (JSON)")
      ->required();
  truth->add_flag("--json", truth_args.json, "Print the gap table as JSON");
  truth->add_option("--edge-cap", truth_args.edge_cap, "Enumeration cap")
      ->check(CLI::Range(1, 62));

  OracleArgs oracle_args;
  CLI::App* oracle =
      app.add_subcommand("oracle-eval", "Run one minimax oracle call");
  oracle->add_option("--instance", oracle_args.instance, "Instance (JSON)")
      ->required();
  oracle->add_option("--eps", oracle_args.eps, "Oracle accuracy");
  oracle->add_option("--constraints", oracle_args.constraints,
                     R"(Constraints, {"c1": {...}, "c2": {...}})");
  oracle->add_option("--iteration-cap", oracle_args.iteration_cap,
                     "Iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return Run(run_args);
    if (*truth) return Truth(truth_args);
    if (*oracle) return OracleEval(oracle_args);
  } catch (const cpedb::Error& e) {
    std::cerr << "explore: " << e.what() << "\n";
    return IsInputError(e) ? kExitConfig : kExitFailure;
  }
  return kExitFailure;
}

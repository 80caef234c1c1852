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
#ifndef CPEDB_EXPERIMENT_H_
#define CPEDB_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpedb/bipartite_graph.h"
#include "cpedb/duel_env.h"
#include "cpedb/instance_io.h"
#include "cpedb/matching_sampler.h"
#include "cpedb/preference.h"

namespace cpedb {

enum class Algorithm {
  kBordaPac,
  kBordaExact,
  kCarCond,
  kCarVerify,
  kCarParallel,
  kOracleEval,
};

std::string_view AlgorithmName(Algorithm algorithm);
// Throws kParseError listing the valid names.
Algorithm ParseAlgorithm(std::string_view name);

// Config file keys mirror the field names. "instance" is resolved against
// the directory of the config file.
struct ExperimentConfig {
  std::string instance;
  Algorithm algorithm = Algorithm::kCarCond;
  double delta = 0.1;
  // Required for borda-pac and oracle-eval, ignored elsewhere.
  std::optional<double> epsilon;
  SamplerConfig sampler;
  int trials = 1;
  uint64_t base_seed = 0;
  int64_t sample_cap = kDefaultSampleCap;
  // Off-diagonal entries pulled toward 1/2 by this factor before the run.
  double scale = 1.0;
  int edge_cap = kDefaultEnumerationCap;
  // car-verify and car-parallel exploration confidence.
  double delta0 = 0.01;
  // oracle-eval constraint pairs and iteration cap.
  ConstraintPair c1;
  ConstraintPair c2;
  int64_t oracle_iteration_cap = 200'000;
};

// Parses and validates a config. Errors are kParseError naming the line.
ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const std::string& base_dir = "");
ExperimentConfig LoadExperimentConfig(const std::string& path);
// Range checks; kParseError on violation.
void ValidateExperimentConfig(const ExperimentConfig& config);
std::string ExperimentConfigToJson(const ExperimentConfig& config);

struct TrialReport {
  uint64_t seed = 0;
  // Canonical edge ids; empty when no answer was returned.
  std::vector<int> matching;
  // Unset when the ground truth is unavailable.
  std::optional<bool> correct;
  int64_t samples = 0;
  double wall_ms = 0.0;
  std::string stop_reason;
  EnvironmentMetadata environment;
  // Minimax iterations (oracle-eval and the car-* algorithms).
  int64_t oracle_iterations = 0;
  // oracle-eval only.
  std::optional<double> value;
  std::optional<double> reference_value;
};

struct Aggregate {
  int trials = 0;
  int successes = 0;
  int failures = 0;  // correct == false
  int unknown = 0;   // correct unset
  int budget_failures = 0;
  double success_rate = 0.0;  // over trials with known correctness
  // 95% Wilson score interval on success_rate.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double samples_mean = 0.0;
  double samples_median = 0.0;
  int64_t samples_max = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string instance_name;
  std::string truth_hash;
  // Absent above the enumeration cap.
  std::optional<GapReport> truth;
  // Sorted by seed.
  std::vector<TrialReport> trials;
  Aggregate aggregate;
};

// Ground truth once, then trials with seeds base_seed + i. Per-trial budget
// exhaustion is recorded, not thrown.
ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const Instance& instance);
ExperimentReport RunExperiment(const ExperimentConfig& config);

// Runs one trial against an already computed ground truth.
TrialReport RunTrial(const ExperimentConfig& config, const Instance& instance,
                     const std::optional<GapReport>& truth, uint64_t seed);

Aggregate Summarize(const std::vector<TrialReport>& trials);

// Wilson score interval at z for k successes out of n.
std::pair<double, double> WilsonInterval(int k, int n, double z = 1.96);

// True when any trial stopped on a sample or oracle budget.
bool HasBudgetFailures(const ExperimentReport& report);

enum class ReportFormat { kCsv, kJson };
ReportFormat ParseReportFormat(std::string_view name);

// Header: seed,algorithm,delta,epsilon,samples,correct,stop_reason,wall_ms.
std::string ReportToCsv(const ExperimentReport& report);
std::string ReportToJson(const ExperimentReport& report);
ExperimentReport ReportFromJson(std::string_view text,
                                const BipartiteGraph& graph);
void EmitReport(const ExperimentReport& report, ReportFormat format,
                const std::string& path);

// JSON form of a ground-truth table. Infinite gaps are written as "inf",
// NaN as null.
std::string GapReportToJson(const GapReport& report);

}  // namespace cpedb

#endif  // CPEDB_EXPERIMENT_H_

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
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpedb/errors.h"
#include "cpedb/instance_io.h"
#include "cpedb/preference.h"
#include "gtest/gtest.h"
#include "testing/instances.h"

namespace cpedb {
namespace {

using ::cpedb::testing::WorkedExampleGraph;
using ::cpedb::testing::WorkedExamplePreference;

constexpr char kFig1Text[] = R"({
  "name": "fig1",
  "graph": {
    "candidates": 4,
    "positions": 2,
    "edges": [[0, 0], [1, 0], [2, 0], [2, 1], [3, 1]]
  },
  "preference": {
    "m": 5,
    "entries": [[0, 1, 0.45], [0, 2, 1.0], [1, 2, 0.55], [3, 4, 0.0]]
  }
})";

Instance Fig1() { return ParseInstance(kFig1Text); }

// Message of the kParseError thrown by f.
template <typename F>
std::string ParseErrorOf(F f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return "";
}

void ClearWallTime(ExperimentReport* r) {
  for (TrialReport& t : r->trials) t.wall_ms = 0.0;
}

TEST(InstanceIo, ParsesWorkedExample) {
  const Instance inst = Fig1();
  const BipartiteGraph g = WorkedExampleGraph();
  EXPECT_EQ(inst.name, "fig1");
  EXPECT_EQ(inst.graph.edges(), g.edges());
  EXPECT_EQ(inst.preference.matrix(), WorkedExamplePreference(g).matrix());
  EXPECT_EQ(inst.input_order, (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(TruthHash(inst.preference), "3bbcff17cea2da01");
}

TEST(InstanceIo, EntriesFollowFileOrderOfEdges) {
  // Same instance with edges listed in reverse order; entries use the file
  // indices, one of them given from the other side.
  const Instance inst = ParseInstance(R"({
    "graph": {"candidates": 4, "positions": 2,
              "edges": [[3, 1], [2, 1], [2, 0], [1, 0], [0, 0]]},
    "preference": {"m": 5, "entries": [[4, 3, 0.45], [4, 2, 1.0],
                                       [2, 3, 0.45], [1, 0, 0.0]]}
  })");
  EXPECT_EQ(inst.input_order, (std::vector<int>{4, 3, 2, 1, 0}));
  const BipartiteGraph g = WorkedExampleGraph();
  EXPECT_EQ(inst.graph.edges(), g.edges());
  const PreferenceMatrix want = WorkedExamplePreference(g);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_NEAR(inst.preference(i, j), want(i, j), 1e-15) << i << "," << j;
    }
  }
}

TEST(InstanceIo, RoundTrip) {
  const Instance inst = Fig1();
  const Instance again = ParseInstance(InstanceToJson(inst));
  EXPECT_EQ(again.name, inst.name);
  EXPECT_EQ(again.graph.edges(), inst.graph.edges());
  EXPECT_EQ(again.preference.matrix(), inst.preference.matrix());
}

TEST(InstanceIo, SyntaxErrorNamesLine) {
  const std::string msg = ParseErrorOf([] {
    ParseInstance("{\n  \"graph\": {\n    \"candidates\": 4\n    "
                  "\"positions\": 2\n  }\n}");
  });
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
}

TEST(InstanceIo, SemanticErrorsNameLine) {
  std::string text = kFig1Text;
  text.replace(text.find("\"m\": 5"), 6, "\"m\": 6");
  std::string msg = ParseErrorOf([&] { ParseInstance(text); });
  EXPECT_NE(msg.find("line 9"), std::string::npos) << msg;

  text = kFig1Text;
  text.replace(text.find("[3, 1]]"), 7, "[3, 7]]");
  msg = ParseErrorOf([&] { ParseInstance(text); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;

  text = kFig1Text;
  text.replace(text.find("0.45"), 4, "1.45");
  msg = ParseErrorOf([&] { ParseInstance(text); });
  EXPECT_NE(msg.find("line 8"), std::string::npos) << msg;
}

TEST(InstanceIo, MissingFileIsIoError) {
  try {
    LoadInstance("/nonexistent/instance.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
    EXPECT_NE(std::string(e.what()).find("No such file"), std::string::npos);
  }
}

TEST(InstanceIo, ConstraintPairs) {
  const auto [c1, c2] =
      ParseConstraintPairs(R"({"c1": {"accepted": [1]}, "c2": {}})");
  EXPECT_EQ(c1.accepted, std::vector<int>{1});
  EXPECT_TRUE(c1.rejected.empty());
  EXPECT_TRUE(c2.empty());
  const std::string msg = ParseErrorOf(
      [] { ParseConstraintPairs("{\n\"c1\": {\"acepted\": [1]}}"); });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("acepted"), std::string::npos) << msg;
}

TEST(Config, ParsesAllFields) {
  const ExperimentConfig c = ParseExperimentConfig(R"({
    "instance": "g.json",
    "algorithm": "car-verify",
    "delta": 0.005,
    "delta0": 0.02,
    "trials": 7,
    "base_seed": 40,
    "sample_cap": 1000,
    "scale": 0.5,
    "edge_cap": 10,
    "sampler": {"mode": "mcmc", "eta": 0.05, "mcmc_steps": 300},
    "oracle": {"c1": {"accepted": [1]}, "c2": {"rejected": [0]},
               "iteration_cap": 500}
  })", "/data");
  EXPECT_EQ(c.instance, "/data/g.json");
  EXPECT_EQ(c.algorithm, Algorithm::kCarVerify);
  EXPECT_EQ(c.delta, 0.005);
  EXPECT_EQ(c.delta0, 0.02);
  EXPECT_EQ(c.trials, 7);
  EXPECT_EQ(c.base_seed, 40u);
  EXPECT_EQ(c.sample_cap, 1000);
  EXPECT_EQ(c.scale, 0.5);
  EXPECT_EQ(c.edge_cap, 10);
  EXPECT_EQ(c.sampler.mode, SamplerMode::kMcmc);
  EXPECT_EQ(c.sampler.eta, 0.05);
  EXPECT_EQ(c.sampler.mcmc_steps, 300);
  EXPECT_EQ(c.c1.accepted, std::vector<int>{1});
  EXPECT_EQ(c.c2.rejected, std::vector<int>{0});
  EXPECT_EQ(c.oracle_iteration_cap, 500);
  EXPECT_FALSE(c.epsilon.has_value());

  const ExperimentConfig again =
      ParseExperimentConfig(ExperimentConfigToJson(c));
  EXPECT_EQ(ExperimentConfigToJson(again), ExperimentConfigToJson(c));
}

TEST(Config, AbsoluteInstancePathIsKept) {
  const ExperimentConfig c = ParseExperimentConfig(
      R"({"instance": "/x/g.json", "algorithm": "car-cond"})", "/data");
  EXPECT_EQ(c.instance, "/x/g.json");
}

TEST(Config, InvalidAlgorithmNamesValidChoicesAndLine) {
  const std::string msg = ParseErrorOf([] {
    ParseExperimentConfig(
        "{\n  \"instance\": \"g.json\",\n  \"algorithm\": \"car-con\"\n}");
  });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("car-con"), std::string::npos) << msg;
  for (const char* name : {"borda-pac", "borda-exact", "car-cond",
                           "car-verify", "car-parallel", "oracle-eval"}) {
    EXPECT_NE(msg.find(name), std::string::npos) << name;
  }
}

TEST(Config, RangeErrorsNameLine) {
  struct Case {
    std::string body;
    int line;
    std::string fragment;
  };
  const std::vector<Case> cases = {
      {"\"algorithm\": \"car-cond\",\n\"delta\": 1.5", 3, "delta"},
      {"\"algorithm\": \"car-cond\",\n\"trials\": 0", 3, "trials"},
      {"\"algorithm\": \"borda-pac\",\n\"delta\": 0.1", 2, "epsilon"},
      {"\"algorithm\": \"borda-pac\",\n\"epsilon\": -1", 3, "epsilon"},
      {"\"algorithm\": \"car-verify\",\n\n\"delta\": 0.1", 4, "delta0"},
      {"\"algorithm\": \"car-cond\",\n\"sampler\": {\n\"mode\": \"gibbs\"}",
       4, "exact, mcmc"},
      {"\"algorithm\": \"car-cond\",\n\"sampler\": {\"eta\": 1.0}", 3,
       "sampler.eta"},
      {"\"algorithm\": \"car-cond\",\n\"colour\": 1", 3, "colour"},
      {"\"algorithm\": \"car-cond\",\n\"scale\": 2", 3, "scale"},
      {"\"algorithm\": \"car-cond\",\n\"trials\": \"many\"", 3, "integer"},
      {"\"algorithm\": \"car-cond\",\n\"oracle\": {\n\"c1\": {\"x\": []}}",
       4, "x"},
  };
  for (const Case& c : cases) {
    const std::string text = "{\"instance\": \"g.json\",\n" + c.body + "}";
    const std::string msg =
        ParseErrorOf([&] { ParseExperimentConfig(text); });
    EXPECT_NE(msg.find("line " + std::to_string(c.line) + ":"),
              std::string::npos)
        << text << "\n" << msg;
    EXPECT_NE(msg.find(c.fragment), std::string::npos) << msg;
  }
}

TEST(Config, SyntaxErrorNamesLineAndColumn) {
  const std::string msg = ParseErrorOf([] {
    ParseExperimentConfig("{\n\"instance\": \"g.json\",\n\"delta\": 0.1,,\n}");
  });
  EXPECT_NE(msg.find("line 3, column"), std::string::npos) << msg;
}

TEST(Wilson, KnownIntervals) {
  // 9/10 at z = 1.96: center (0.9 + 0.19208) / 1.38416, half-width
  // 1.96 sqrt(0.009 + 0.009604) / 1.38416.
  const double center = (0.9 + 0.19208) / 1.38416;
  const double half = 1.96 * std::sqrt(0.009 + 0.009604) / 1.38416;
  const auto [lo, hi] = WilsonInterval(9, 10);
  EXPECT_NEAR(lo, center - half, 1e-12);
  EXPECT_NEAR(hi, center + half, 1e-12);
  EXPECT_NEAR(lo, 0.5958, 1e-4);
  EXPECT_NEAR(hi, 0.9821, 1e-4);
  EXPECT_EQ(WilsonInterval(0, 20).first, 0.0);
  EXPECT_EQ(WilsonInterval(20, 20).second, 1.0);
}

TEST(Summarize, CountsMatchPerTrialBooleans) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    std::vector<TrialReport> trials(n);
    int yes = 0, no = 0, unknown = 0, budget = 0;
    std::vector<int64_t> samples;
    for (int i = 0; i < n; ++i) {
      TrialReport& t = trials[i];
      t.seed = i;
      t.samples = std::uniform_int_distribution<int64_t>(0, 1000)(rng);
      samples.push_back(t.samples);
      const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
      if (kind == 0) {
        ++unknown;
        t.stop_reason = "identified";
      } else if (kind == 1) {
        t.correct = true;
        ++yes;
        t.stop_reason = "identified";
      } else if (kind == 2) {
        t.correct = false;
        ++no;
        t.stop_reason = "verification-error";
      } else {
        t.correct = false;
        ++no;
        ++budget;
        t.stop_reason = "budget-exceeded";
      }
    }
    const Aggregate a = Summarize(trials);
    EXPECT_EQ(a.trials, n);
    EXPECT_EQ(a.successes, yes);
    EXPECT_EQ(a.failures, no);
    EXPECT_EQ(a.unknown, unknown);
    EXPECT_EQ(a.budget_failures, budget);
    EXPECT_EQ(a.successes + a.failures + a.unknown, a.trials);
    std::sort(samples.begin(), samples.end());
    double sum = 0;
    for (int64_t s : samples) sum += s;
    EXPECT_DOUBLE_EQ(a.samples_mean, sum / n);
    EXPECT_EQ(a.samples_max, samples.back());
    // Median: every value at most it covers half, every value at least it
    // covers half.
    int below = 0, above = 0;
    for (int64_t s : samples) {
      below += s <= a.samples_median;
      above += s >= a.samples_median;
    }
    EXPECT_GE(2 * below, n);
    EXPECT_GE(2 * above, n);
  }
}

ExperimentConfig Fig1Config(Algorithm algorithm, int trials) {
  ExperimentConfig c;
  c.instance = "fig1";
  c.algorithm = algorithm;
  c.trials = trials;
  c.base_seed = 1;
  return c;
}

TEST(RunExperiment, Fig1GapTableAndHardness) {
  ExperimentConfig c = Fig1Config(Algorithm::kBordaExact, 1);
  const ExperimentReport r = RunExperiment(c, Fig1());
  ASSERT_TRUE(r.truth.has_value());
  // Inverse-square sum over the five edge gaps 0.05, 0.05, 0.3, 0.5, 0.5.
  double want = 0.0;
  for (double g : {0.05, 0.05, 0.3, 0.5, 0.5}) want += 1.0 / (g * g);
  EXPECT_NEAR(r.truth->borda_hardness, want, 1e-6);
  EXPECT_NEAR(r.truth->borda_hardness, 819.11, 0.01);
  std::vector<double> gaps = r.truth->borda_gap;
  std::sort(gaps.begin(), gaps.end());
  const std::vector<double> sorted = {0.05, 0.05, 0.3, 0.5, 0.5};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(gaps[i], sorted[i], 1e-12);
  EXPECT_EQ(r.truth->width, 4);
  EXPECT_EQ(r.truth->num_matchings, 5);

  // Same table as the preference module computes directly.
  const Instance inst = Fig1();
  const GapReport direct = ComputeGaps(inst.graph, inst.preference);
  EXPECT_EQ(r.truth->condorcet_gap, direct.condorcet_gap);
  EXPECT_EQ(r.truth->borda_gap, direct.borda_gap);
  EXPECT_EQ(r.truth->condorcet_winner, direct.condorcet_winner);
  EXPECT_EQ(r.truth_hash, "3bbcff17cea2da01");

  const std::string json = ReportToJson(r);
  EXPECT_NE(json.find("\"borda_hardness\": 819.11"), std::string::npos);
}

TEST(RunExperiment, CarCondFig1SuccessRate) {
  const ExperimentReport r =
      RunExperiment(Fig1Config(Algorithm::kCarCond, 50), Fig1());
  ASSERT_EQ(r.trials.size(), 50u);
  // 0.9 minus three binomial standard deviations at n = 50.
  const double slack = 3.0 * std::sqrt(0.1 * 0.9 / 50);
  EXPECT_GE(r.aggregate.success_rate, 0.9 - slack);
  EXPECT_EQ(r.aggregate.unknown, 0);
  int successes = 0;
  for (size_t i = 0; i < r.trials.size(); ++i) {
    EXPECT_EQ(r.trials[i].seed, 1 + i);
    successes += r.trials[i].correct.value();
    EXPECT_EQ(r.trials[i].environment.seed, r.trials[i].seed);
    EXPECT_EQ(r.trials[i].environment.truth_hash, "3bbcff17cea2da01");
  }
  EXPECT_EQ(successes, r.aggregate.successes);
  EXPECT_FALSE(HasBudgetFailures(r));
}

TEST(RunExperiment, FixedSeedIsReproducible) {
  for (Algorithm a : {Algorithm::kBordaPac, Algorithm::kBordaExact,
                      Algorithm::kCarCond, Algorithm::kCarVerify}) {
    ExperimentConfig c = Fig1Config(a, 1);
    c.epsilon = 0.1;
    if (a == Algorithm::kCarVerify) c.delta = 0.005;
    ExperimentReport r1 = RunExperiment(c, Fig1());
    ExperimentReport r2 = RunExperiment(c, Fig1());
    ClearWallTime(&r1);
    ClearWallTime(&r2);
    EXPECT_EQ(ReportToJson(r1), ReportToJson(r2)) << AlgorithmName(a);
    EXPECT_EQ(ReportToCsv(r1), ReportToCsv(r2)) << AlgorithmName(a);
    EXPECT_GT(r1.trials[0].samples, 0) << AlgorithmName(a);
  }
}

TEST(RunExperiment, CsvHasOneRowPerTrial) {
  ExperimentConfig c = Fig1Config(Algorithm::kBordaPac, 3);
  c.epsilon = 0.05;
  const ExperimentReport r = RunExperiment(c, Fig1());
  std::istringstream in(ReportToCsv(r));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0],
            "seed,algorithm,delta,epsilon,samples,correct,stop_reason,"
            "wall_ms");
  for (int i = 0; i < 3; ++i) {
    const std::string& row = lines[i + 1];
    EXPECT_EQ(row.rfind(std::to_string(1 + i) + ",borda-pac,0.1,0.05,", 0),
              0u)
        << row;
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 7) << row;
  }
}

TEST(RunExperiment, JsonRoundTrip) {
  ExperimentConfig c = Fig1Config(Algorithm::kCarCond, 3);
  const Instance inst = Fig1();
  const ExperimentReport r = RunExperiment(c, inst);
  const std::string json = ReportToJson(r);
  const ExperimentReport back = ReportFromJson(json, inst.graph);
  EXPECT_EQ(ReportToJson(back), json);
  ASSERT_EQ(back.trials.size(), r.trials.size());
  for (size_t i = 0; i < r.trials.size(); ++i) {
    EXPECT_EQ(back.trials[i].wall_ms, r.trials[i].wall_ms);
    EXPECT_EQ(back.trials[i].matching, r.trials[i].matching);
    EXPECT_EQ(back.trials[i].correct, r.trials[i].correct);
  }
  ASSERT_TRUE(back.truth.has_value());
  EXPECT_EQ(back.truth->borda_gap, r.truth->borda_gap);
  EXPECT_EQ(back.truth->condorcet_winner, r.truth->condorcet_winner);
  // NaN entries of the verification gap survive as NaN.
  for (size_t e = 0; e < r.truth->verification_gap.size(); ++e) {
    EXPECT_EQ(std::isnan(back.truth->verification_gap[e]),
              std::isnan(r.truth->verification_gap[e]));
  }
}

TEST(RunExperiment, BudgetFailuresAreRecorded) {
  ExperimentConfig c = Fig1Config(Algorithm::kCarCond, 2);
  c.sample_cap = 10;
  const ExperimentReport r = RunExperiment(c, Fig1());
  ASSERT_EQ(r.trials.size(), 2u);
  for (const TrialReport& t : r.trials) {
    EXPECT_EQ(t.stop_reason, "budget-exceeded");
    EXPECT_EQ(t.samples, 10);
    EXPECT_TRUE(t.matching.empty());
    EXPECT_EQ(t.correct, false);
  }
  EXPECT_TRUE(HasBudgetFailures(r));
  EXPECT_EQ(r.aggregate.budget_failures, 2);

  c.algorithm = Algorithm::kBordaExact;
  const ExperimentReport b = RunExperiment(c, Fig1());
  EXPECT_EQ(b.trials[0].stop_reason, "budget-exceeded");
  EXPECT_TRUE(HasBudgetFailures(b));
}

TEST(RunExperiment, AboveEnumerationCapHasUnknownCorrectness) {
  ExperimentConfig c = Fig1Config(Algorithm::kBordaExact, 2);
  c.edge_cap = 3;
  const ExperimentReport r = RunExperiment(c, Fig1());
  EXPECT_FALSE(r.truth.has_value());
  EXPECT_EQ(r.aggregate.unknown, 2);
  for (const TrialReport& t : r.trials) {
    EXPECT_FALSE(t.correct.has_value());
    EXPECT_GT(t.samples, 0);
  }
  EXPECT_NE(ReportToJson(r).find("\"truth\": null"), std::string::npos);
  EXPECT_NE(ReportToCsv(r).find(",unknown,"), std::string::npos);
}

TEST(RunExperiment, OracleEval) {
  ExperimentConfig c = Fig1Config(Algorithm::kOracleEval, 1);
  c.epsilon = 0.05;
  c.c1.accepted = {0};
  const ExperimentReport r = RunExperiment(c, Fig1());
  const TrialReport& t = r.trials[0];
  ASSERT_TRUE(t.value && t.reference_value);
  // Game over {e1,e4}, {e1,e5} against all five matchings.
  EXPECT_NEAR(*t.reference_value, 0.475, 1e-9);
  EXPECT_LE(std::abs(*t.value - 0.475), 0.05);
  EXPECT_EQ(t.correct, true);
  EXPECT_GT(t.oracle_iterations, 0);

  c.c1 = {{0, 1}, {}};  // e1 and e2 share s1
  const ExperimentReport none = RunExperiment(c, Fig1());
  EXPECT_EQ(none.trials[0].stop_reason, "max-side-infeasible");
  EXPECT_FALSE(none.trials[0].correct.has_value());
}

TEST(RunExperiment, ScaleIsAppliedBeforeTruth) {
  ExperimentConfig c = Fig1Config(Algorithm::kOracleEval, 1);
  c.epsilon = 0.05;
  c.scale = 0.5;
  const Instance inst = Fig1();
  const ExperimentReport r = RunExperiment(c, inst);
  const PreferenceMatrix scaled =
      inst.preference.ScaledTowardHalf(inst.graph, 0.5);
  EXPECT_EQ(r.truth_hash, TruthHash(scaled));
  EXPECT_EQ(r.trials[0].environment.truth_hash, TruthHash(scaled));
  EXPECT_EQ(r.truth->borda_gap, ComputeGaps(inst.graph, scaled).borda_gap);
}

TEST(RunExperiment, CarVerifyAndParallelAnswerOrError) {
  for (Algorithm a : {Algorithm::kCarVerify, Algorithm::kCarParallel}) {
    ExperimentConfig c = Fig1Config(a, 2);
    c.delta = 0.005;
    const ExperimentReport r = RunExperiment(c, Fig1());
    for (const TrialReport& t : r.trials) {
      if (t.stop_reason == "identified") {
        EXPECT_EQ(t.matching, (std::vector<int>{1, 4})) << AlgorithmName(a);
      } else {
        EXPECT_TRUE(t.matching.empty());
      }
    }
  }
}

TEST(EmitReport, WritesFilesAndSurfacesIoErrors) {
  ExperimentConfig c = Fig1Config(Algorithm::kBordaExact, 1);
  const ExperimentReport r = RunExperiment(c, Fig1());
  const std::string dir = ::testing::TempDir();
  const std::string csv = dir + "/report.csv";
  EmitReport(r, ParseReportFormat("csv"), csv);
  EXPECT_EQ(ReadFile(csv), ReportToCsv(r));
  const std::string json = dir + "/report.json";
  EmitReport(r, ParseReportFormat("json"), json);
  EXPECT_EQ(ReadFile(json), ReportToJson(r));
  std::filesystem::remove(csv);
  std::filesystem::remove(json);
  try {
    EmitReport(r, ReportFormat::kCsv, "/nonexistent/dir/report.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
  EXPECT_THROW(ParseReportFormat("xml"), Error);
}

}  // namespace
}  // namespace cpedb

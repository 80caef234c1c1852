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

#ifndef CPEDB_CONDORCET_EXPLORE_H_
#define CPEDB_CONDORCET_EXPLORE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpedb/bipartite_graph.h"
#include "cpedb/condorcet_oracle.h"
#include "cpedb/duel_env.h"
#include "cpedb/matching_oracle.h"
#include "cpedb/preference.h"

namespace cpedb {

enum class CarStatus {
  kRunning,
  kIdentified,
  kVerificationError,
  kBudgetExceeded,
  // Confidence bounds contradicted earlier decisions: no matching satisfies
  // the accepted and rejected sets, or sample-free rounds stopped changing
  // anything.
  kInconsistent,
  kOracleBudgetExceeded,
};

std::string_view CarStatusName(CarStatus status);
inline bool IsTerminal(CarStatus s) { return s != CarStatus::kRunning; }

struct SecondBest {
  Matching matching;
  double value = 0.0;
};

// argmax over M != mhat of f(M, mhat, q) with per-edge weights
// q[e][e(mhat, s(e))], from l constrained solves that each exclude one edge
// of mhat. Ties go to the lexicographically smallest matching. std::nullopt
// when mhat is the only maximum matching.
std::optional<SecondBest> SecondBestResponse(const BipartiteGraph& graph,
                                             const Matching& mhat,
                                             const PairwiseMatrix& q);
std::optional<SecondBest> SecondBestResponse(MatchingOracle& oracle,
                                             const Matching& mhat,
                                             const PairwiseMatrix& q);

enum EdgeStatus : uint8_t { kUndecided = 0, kAccepted = 1, kRejected = 2 };

struct EdgeDecision {
  int edge = 0;
  bool accepted = false;
  int64_t round = 0;
  int epoch = 0;
  // Samples this run had drawn when the decision was made.
  int64_t samples = 0;
};

struct CarCondTrace {
  int64_t rounds = 0;
  int64_t samples = 0;
  int64_t oracle_calls = 0;
  int64_t oracle_iterations = 0;
  std::vector<EdgeDecision> decisions;
};

// State after the classification pass of round t.
struct CarRoundEvent {
  int64_t t = 0;
  int epoch = 0;
  double epsilon = 0.0;
  std::span<const uint8_t> status;
  const BoundMatrices* bounds = nullptr;
};

inline constexpr int64_t kDefaultIdleRounds = 64;

struct CarCondOptions {
  double delta = 0.1;
  OracleOptions oracle;
  // Seed each oracle call with the previous solution for the same edge and
  // call kind.
  bool warm_start = true;
  // Consecutive sample-free rounds without a decision before giving up.
  int64_t max_idle_rounds = kDefaultIdleRounds;
};

// Condorcet winner identification by accept/reject classification. Round t
// of epoch q (4^(q-1) < t <= 4^q, eps_q = 2^-q) duels every comparable pair
// inside the undecided set once, rebuilds the confidence matrices, and asks
// the minimax oracle four questions per undecided edge.
//
// Resumable: Step draws at most one environment sample and runs every
// computation that follows it, so the decision after the last sample is
// visible immediately.
class CarCond {
 public:
  CarCond(const BipartiteGraph& graph, CarCondOptions options);

  CarStatus Step(DuelEnvironment& env);
  CarStatus Run(DuelEnvironment& env);

  CarStatus status() const { return status_; }
  // The identified matching; empty unless status() == kIdentified.
  const Matching& result() const { return result_; }
  const CarCondTrace& trace() const { return trace_; }
  std::span<const uint8_t> edge_status() const { return edge_status_; }
  int64_t round() const { return t_; }
  int epoch() const { return q_; }
  const CarCondOptions& options() const { return options_; }

  void set_observer(std::function<void(const CarRoundEvent&)> observer) {
    observer_ = std::move(observer);
  }

  // Complete state, observer excluded. Doubles round-trip exactly.
  std::string Serialize() const;
  static CarCond Deserialize(const BipartiteGraph& graph,
                             std::string_view data, CarCondOptions options);

 private:
  // Runs computation until a sample is needed or the run ends.
  void Advance();
  void BeginRound();
  void FinishRound();
  double Query(int e, int kind, const ConstraintPair& c1,
               const ConstraintPair& c2, const PairwiseMatrix& q, double eps);
  bool ConflictsWithAccepted(int e) const;

  const BipartiteGraph* graph_;
  CarCondOptions options_;
  MinimaxOracle oracle_;
  PairStats stats_;
  BoundMatrices bounds_;
  std::vector<uint8_t> edge_status_;
  std::vector<std::pair<int, int>> pending_;
  size_t cursor_ = 0;
  bool round_open_ = false;
  int64_t t_ = 0;
  int q_ = 1;
  int64_t idle_rounds_ = 0;
  int64_t round_samples_ = 0;
  CarStatus status_ = CarStatus::kRunning;
  Matching result_;
  CarCondTrace trace_;
  // Four warm starts per edge: InU, InL, ExU, ExL.
  std::vector<OracleWarmStart> warm_;
  std::function<void(const CarRoundEvent&)> observer_;
};

CarCond RunCarCond(DuelEnvironment& env, CarCondOptions options);

inline constexpr double kVerifyExploreDelta = 0.01;

struct CarVerifyOptions {
  double delta = 0.005;
  // Confidence of the hypothesis-generating exploration.
  double delta0 = kVerifyExploreDelta;
  CarCondOptions explore;
};

struct CarVerifyTrace {
  int64_t exploration_samples = 0;
  int64_t verification_samples = 0;
  int64_t verification_rounds = 0;
};

// Hypothesis from CarCond at delta0, then a verification loop with its own
// round counter and fresh statistics that either confirms the hypothesis or
// reports an error. Step draws at most one sample.
class CarVerify {
 public:
  CarVerify(const BipartiteGraph& graph, CarVerifyOptions options);
  // Skips exploration and verifies the given hypothesis.
  static CarVerify WithHypothesis(const BipartiteGraph& graph,
                                  CarVerifyOptions options, Matching mhat);

  CarStatus Step(DuelEnvironment& env);
  CarStatus Run(DuelEnvironment& env);

  CarStatus status() const { return status_; }
  const Matching& result() const { return result_; }
  // The exploration hypothesis once available.
  const std::optional<Matching>& hypothesis() const { return hypothesis_; }
  const CarCond& exploration() const { return explore_; }
  const CarVerifyTrace& trace() const { return trace_; }
  int64_t samples() const {
    return trace_.exploration_samples + trace_.verification_samples;
  }
  const CarVerifyOptions& options() const { return options_; }

  std::string Serialize() const;
  static CarVerify Deserialize(const BipartiteGraph& graph,
                               std::string_view data,
                               CarVerifyOptions options);

 private:
  void AdvanceVerification();

  const BipartiteGraph* graph_;
  CarVerifyOptions options_;
  CarCond explore_;
  MatchingOracle oracle_;
  std::optional<Matching> hypothesis_;
  PairStats stats_;
  BoundMatrices bounds_;
  int64_t t_ = 1;
  std::optional<std::pair<int, int>> pending_;
  CarStatus status_ = CarStatus::kRunning;
  Matching result_;
  CarVerifyTrace trace_;
};

// Instances advanced at tick t: every k >= 0 with t mod 2^k == 0.
std::vector<int> ScheduledInstances(int64_t t);

struct ScheduleOutcome {
  // Instance that returned an answer, or -1.
  int winner = -1;
  int64_t ticks = 0;
  // In retirement order.
  std::vector<int> retired;
  CarStatus status = CarStatus::kRunning;
};

// Round-robin driver. At tick t every scheduled, non-retired instance k gets
// one call to advance(k). kRunning continues, kIdentified ends the run,
// kBudgetExceeded ends it without an answer, anything else retires k.
// The observer sees (t, instances advanced at t).
ScheduleOutcome RunParallelSchedule(
    const std::function<CarStatus(int)>& advance, int64_t max_ticks,
    const std::function<void(int64_t, std::span<const int>)>& observer = {});

struct CarParallelOptions {
  double delta = 0.005;
  double delta0 = kVerifyExploreDelta;
  CarCondOptions explore;
  int64_t max_ticks = int64_t{1} << 62;
};

struct CarParallelResult {
  CarStatus status = CarStatus::kRunning;
  Matching matching;
  ScheduleOutcome schedule;
  // Samples drawn by each created instance.
  std::vector<int64_t> instance_samples;
  int64_t samples = 0;
};

// Instance k is CarVerify at delta / 2^(k+1), created at its first scheduled
// tick t = 2^k and given one sample per scheduled tick.
CarParallelResult RunCarParallel(DuelEnvironment& env,
                                 CarParallelOptions options);

}  // namespace cpedb

#endif  // CPEDB_CONDORCET_EXPLORE_H_

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

#ifndef CPEDB_BORDA_EXPLORE_H_
#define CPEDB_BORDA_EXPLORE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cpedb/bipartite_graph.h"
#include "cpedb/duel_env.h"
#include "cpedb/matching_sampler.h"

namespace cpedb {

enum class BordaStopReason { kGapClosed, kExactEquality, kBudgetExceeded };

std::string_view BordaStopReasonName(BordaStopReason reason);

// Per-round view handed to an observer before the duel is pulled.
struct BordaRound {
  int epoch = 0;  // 0 for the PAC algorithm
  int64_t t = 0;
  std::span<const int> empirical;  // M_t, edge per position
  std::span<const int> adjusted;   // tilde M_t
  int z = -1;
  int opponent = -1;
  bool self_duel = false;
};

struct BordaOptions {
  double delta = 0.1;
  double epsilon = 0.1;  // PAC accuracy; unused by the exact algorithm
  SamplerConfig sampler;
  // When set, the running mean of an edge is replaced by this value after
  // each of its pulls. Diagnostic only.
  std::optional<std::vector<double>> revealed_means;
  std::function<void(const BordaRound&)> observer;
};

struct BordaEpoch {
  int q = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  int64_t rounds = 0;
  int64_t samples = 0;
};

struct BordaTrace {
  int64_t rounds = 0;
  int64_t samples = 0;     // environment samples consumed by the run
  int64_t self_duels = 0;  // resolved locally without a sample
  std::vector<int64_t> pulls;
  BordaStopReason stop_reason = BordaStopReason::kGapClosed;
  std::vector<BordaEpoch> epochs;
};

struct BordaResult {
  // The last empirical matching when the budget ran out.
  Matching matching;
  BordaTrace trace;
};

// Approximate Borda winner with accuracy epsilon and confidence delta.
BordaResult ClucbBordaPac(DuelEnvironment& env, const BordaOptions& options);

// Exact Borda winner: PAC epochs with eps_q = 2^-q and delta_q = delta/(2q^2),
// statistics reset at each epoch.
BordaResult ClucbBordaExact(DuelEnvironment& env, const BordaOptions& options);

// Differences at or below this count as equal adjusted weights.
inline constexpr double kExactStopTolerance = 1e-9;

}  // namespace cpedb

#endif  // CPEDB_BORDA_EXPLORE_H_

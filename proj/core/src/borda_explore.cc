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

#include "cpedb/borda_explore.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpedb/errors.h"
#include "cpedb/matching_oracle.h"

namespace cpedb {

std::string_view BordaStopReasonName(BordaStopReason reason) {
  switch (reason) {
    case BordaStopReason::kGapClosed:
      return "pac-gap-closed";
    case BordaStopReason::kExactEquality:
      return "exact-equality";
    case BordaStopReason::kBudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

namespace {

void CheckProbability(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must lie in (0, 1), got " +
                    std::to_string(v));
  }
}

enum class EpochOutcome { kReturn, kBreak, kBudget };

// One run of the CLUCB loop at fixed (epsilon, delta). In exact mode an
// adjusted gap of zero returns and a gap below l * epsilon breaks.
class ClucbLoop {
 public:
  ClucbLoop(DuelEnvironment& env, const BordaOptions& options,
            MatchingSampler& sampler, BordaTrace& trace)
      : env_(env),
        graph_(env.graph()),
        options_(options),
        sampler_(sampler),
        trace_(trace),
        oracle_(graph_),
        stats_(graph_.num_edges()),
        radius_(graph_.num_edges()),
        adjusted_(graph_.num_edges()),
        in_empirical_(graph_.num_edges()) {}

  EpochOutcome Run(double epsilon, double delta, bool exact, int epoch,
                   Matching* out, int64_t* rounds) {
    const int m = graph_.num_edges();
    const int l = graph_.num_positions();
    const int64_t k = graph_.num_duels();
    stats_.Reset();
    for (int64_t t = 1;; ++t) {
      const auto found = oracle_.MaximizeEdges(stats_.means());
      empirical_.assign(found.begin(), found.end());
      std::fill(in_empirical_.begin(), in_empirical_.end(), 0);
      for (int e : empirical_) in_empirical_[e] = 1;
      const double log_term = ConfidenceLog(t, delta, k);
      for (int e = 0; e < m; ++e) {
        radius_[e] = RadiusFromLog(log_term, stats_.count(e));
        const double pad = radius_[e] + 0.25 * epsilon;
        adjusted_[e] = stats_.mean(e) + (in_empirical_[e] ? -pad : pad);
      }
      const auto adjusted = oracle_.MaximizeEdges(adjusted_);
      double diff = 0.0;
      for (int j = 0; j < l; ++j) {
        diff += adjusted_[adjusted[j]] - adjusted_[empirical_[j]];
      }
      *rounds = t - 1;
      if ((exact && diff <= kExactStopTolerance) || diff <= l * epsilon) {
        *out = Matching(graph_, empirical_);
        if (exact && diff > kExactStopTolerance) return EpochOutcome::kBreak;
        return EpochOutcome::kReturn;
      }
      // Both matchings hold one edge per position, so the symmetric
      // difference is the positions where they disagree.
      int z = -1;
      for (int j = 0; j < l; ++j) {
        if (adjusted[j] == empirical_[j]) continue;
        for (int e : {empirical_[j], adjusted[j]}) {
          if (z < 0 || radius_[e] > radius_[z] ||
              (radius_[e] == radius_[z] && e < z)) {
            z = e;
          }
        }
      }
      if (options_.observer) {
        adjusted_copy_.assign(adjusted.begin(), adjusted.end());
      }
      const int opponent = sampler_.SampleEdges()[graph_.position_of(z)];
      const bool self_duel = opponent == z;
      if (options_.observer) {
        options_.observer({epoch, t, empirical_, adjusted_copy_, z, opponent,
                           self_duel});
      }
      bool won;
      if (self_duel) {
        won = BernoulliDraw(sampler_.rng(), 0.5);
        ++trace_.self_duels;
      } else {
        if (env_.exhausted()) {
          *out = Matching(graph_, empirical_);
          return EpochOutcome::kBudget;
        }
        won = env_.SampleDuel(z, opponent);
      }
      stats_.Record(z, won);
      if (options_.revealed_means) {
        stats_.SetMean(z, (*options_.revealed_means)[z]);
      }
      ++trace_.pulls[z];
      ++trace_.rounds;
    }
  }

 private:
  DuelEnvironment& env_;
  const BipartiteGraph& graph_;
  const BordaOptions& options_;
  MatchingSampler& sampler_;
  BordaTrace& trace_;
  MatchingOracle oracle_;
  EdgeStats stats_;
  std::vector<double> radius_;
  std::vector<double> adjusted_;
  std::vector<int> empirical_;
  std::vector<int> adjusted_copy_;
  std::vector<uint8_t> in_empirical_;
};

BordaTrace StartTrace(const BipartiteGraph& graph) {
  BordaTrace trace;
  trace.pulls.assign(graph.num_edges(), 0);
  return trace;
}

}  // namespace

BordaResult ClucbBordaPac(DuelEnvironment& env, const BordaOptions& options) {
  CheckProbability(options.delta, "delta");
  if (!(options.epsilon > 0.0 && std::isfinite(options.epsilon))) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  const int64_t start = env.total_samples();
  SamplerConfig cfg = options.sampler;
  // eps / 8 >= 1 places no constraint on the sampler.
  cfg.eta = std::min(options.epsilon / 8.0, std::nextafter(1.0, 0.0));
  MatchingSampler sampler(env.graph(), cfg);
  BordaResult result{Matching(), StartTrace(env.graph())};
  ClucbLoop loop(env, options, sampler, result.trace);
  int64_t rounds = 0;
  const EpochOutcome outcome = loop.Run(options.epsilon, options.delta,
                                        /*exact=*/false, 0, &result.matching,
                                        &rounds);
  result.trace.stop_reason = outcome == EpochOutcome::kBudget
                                 ? BordaStopReason::kBudgetExceeded
                                 : BordaStopReason::kGapClosed;
  result.trace.samples = env.total_samples() - start;
  return result;
}

BordaResult ClucbBordaExact(DuelEnvironment& env, const BordaOptions& options) {
  CheckProbability(options.delta, "delta");
  const int64_t start = env.total_samples();
  SamplerConfig cfg = options.sampler;
  cfg.eta = 1.0 / 16.0;
  MatchingSampler sampler(env.graph(), cfg);
  BordaResult result{Matching(), StartTrace(env.graph())};
  ClucbLoop loop(env, options, sampler, result.trace);
  for (int q = 1;; ++q) {
    const double eps_q = std::ldexp(1.0, -q);
    const double delta_q = options.delta / (2.0 * q * q);
    sampler.set_eta(eps_q / 8.0);
    const int64_t epoch_start = env.total_samples();
    BordaEpoch epoch{q, eps_q, delta_q, 0, 0};
    const EpochOutcome outcome =
        loop.Run(eps_q, delta_q, /*exact=*/true, q, &result.matching,
                 &epoch.rounds);
    epoch.samples = env.total_samples() - epoch_start;
    result.trace.epochs.push_back(epoch);
    if (outcome == EpochOutcome::kBreak) continue;
    result.trace.stop_reason = outcome == EpochOutcome::kReturn
                                   ? BordaStopReason::kExactEquality
                                   : BordaStopReason::kBudgetExceeded;
    break;
  }
  result.trace.samples = env.total_samples() - start;
  return result;
}

}  // namespace cpedb

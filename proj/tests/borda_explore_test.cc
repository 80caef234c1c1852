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

#include <random>

#include "cpedb/errors.h"
#include "cpedb/preference.h"
#include "gtest/gtest.h"
#include "testing/instances.h"

namespace cpedb {
namespace {

using ::cpedb::testing::kE1;
using ::cpedb::testing::kE5;

class BordaTest : public ::testing::Test {
 protected:
  BipartiteGraph g_ = testing::WorkedExampleGraph();
  PreferenceMatrix p_ = testing::WorkedExamplePreference(g_);
  std::vector<Matching> all_ = EnumerateMaximumMatchings(g_);

  BordaOptions Options(double delta, double epsilon, uint64_t seed) const {
    BordaOptions o;
    o.delta = delta;
    o.epsilon = epsilon;
    o.sampler.seed = seed;
    return o;
  }
};

TEST_F(BordaTest, PacOutputIsEpsilonOptimal) {
  const double best = BordaScore(Matching(g_, {kE1, kE5}), p_, all_);
  int exact_hits = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    DuelEnvironment env(g_, p_, seed);
    const BordaResult r = ClucbBordaPac(env, Options(0.1, 0.05, seed + 100));
    EXPECT_EQ(r.trace.stop_reason, BordaStopReason::kGapClosed);
    EXPECT_GE(BordaScore(r.matching, p_, all_), best - 0.05);
    EXPECT_EQ(r.trace.samples, env.total_samples());
    int64_t pulls = 0;
    for (int64_t n : r.trace.pulls) pulls += n;
    EXPECT_EQ(pulls, r.trace.samples + r.trace.self_duels);
    EXPECT_EQ(pulls, r.trace.rounds);
    exact_hits += r.matching.edge_ids() == std::vector<int>{kE1, kE5};
  }
  EXPECT_GE(exact_hits, 18);
}

TEST_F(BordaTest, LargeEpsilonStopsImmediately) {
  // Round one has every radius at 1: the adjusted optimum exceeds the
  // empirical one by at most 2l(1 + eps/4), which is <= l eps iff eps >= 4.
  DuelEnvironment env(g_, p_, 1);
  const BordaResult r = ClucbBordaPac(env, Options(0.1, 4.0, 1));
  EXPECT_EQ(r.trace.rounds, 0);
  EXPECT_EQ(r.trace.samples, 0);
  EXPECT_EQ(r.matching.size(), 2);

  DuelEnvironment env2(g_, p_, 1);
  const BordaResult r2 = ClucbBordaPac(env2, Options(0.1, 1.0, 1));
  EXPECT_LT(r2.trace.samples, 200);
}

TEST_F(BordaTest, ObserverSeesDuelsInsideSymmetricDifference) {
  DuelEnvironment env(g_, p_, 3);
  BordaOptions o = Options(0.1, 0.05, 4);
  int64_t rounds = 0;
  std::vector<int64_t> pulls(g_.num_edges(), 0);
  o.observer = [&](const BordaRound& round) {
    ++rounds;
    EXPECT_EQ(round.t, rounds);
    bool in_empirical = false, in_adjusted = false;
    for (int e : round.empirical) in_empirical |= e == round.z;
    for (int e : round.adjusted) in_adjusted |= e == round.z;
    EXPECT_NE(in_empirical, in_adjusted);
    EXPECT_TRUE(g_.Comparable(round.z, round.opponent));
    EXPECT_EQ(round.self_duel, round.z == round.opponent);
    ++pulls[round.z];
  };
  const BordaResult r = ClucbBordaPac(env, o);
  EXPECT_EQ(rounds, r.trace.rounds);
  EXPECT_EQ(pulls, r.trace.pulls);
}

TEST_F(BordaTest, BudgetExceededIsReported) {
  DuelEnvironment env(g_, p_, 3, /*sample_cap=*/100);
  const BordaResult r = ClucbBordaPac(env, Options(0.1, 0.01, 4));
  EXPECT_EQ(r.trace.stop_reason, BordaStopReason::kBudgetExceeded);
  EXPECT_EQ(r.trace.samples, 100);
  EXPECT_EQ(r.matching.size(), 2);
  DuelEnvironment env2(g_, p_, 3, 100);
  EXPECT_EQ(ClucbBordaExact(env2, Options(0.1, 0.1, 4)).trace.stop_reason,
            BordaStopReason::kBudgetExceeded);
}

TEST_F(BordaTest, RejectsBadParameters) {
  DuelEnvironment env(g_, p_, 3);
  EXPECT_THROW(ClucbBordaPac(env, Options(0.0, 0.1, 1)), Error);
  EXPECT_THROW(ClucbBordaPac(env, Options(1.0, 0.1, 1)), Error);
  EXPECT_THROW(ClucbBordaPac(env, Options(0.1, 0.0, 1)), Error);
  EXPECT_THROW(ClucbBordaExact(env, Options(1.5, 0.1, 1)), Error);
}

TEST_F(BordaTest, DeterministicGivenSeeds) {
  DuelEnvironment a(g_, p_, 8), b(g_, p_, 8);
  const BordaResult ra = ClucbBordaPac(a, Options(0.1, 0.05, 9));
  const BordaResult rb = ClucbBordaPac(b, Options(0.1, 0.05, 9));
  EXPECT_EQ(ra.trace.pulls, rb.trace.pulls);
  EXPECT_EQ(ra.matching, rb.matching);
}

TEST_F(BordaTest, ExactFindsWinnerWithScheduledEpochs) {
  for (uint64_t seed = 0; seed < 3; ++seed) {
    DuelEnvironment env(g_, p_, seed);
    const BordaResult r = ClucbBordaExact(env, Options(0.1, 0.5, seed + 7));
    EXPECT_EQ(r.trace.stop_reason, BordaStopReason::kExactEquality);
    EXPECT_EQ(r.matching.edge_ids(), (std::vector<int>{kE1, kE5}));
    ASSERT_FALSE(r.trace.epochs.empty());
    double delta_sum = 0.0;
    int64_t samples = 0;
    for (size_t i = 0; i < r.trace.epochs.size(); ++i) {
      const BordaEpoch& ep = r.trace.epochs[i];
      EXPECT_EQ(ep.q, static_cast<int>(i) + 1);
      EXPECT_DOUBLE_EQ(ep.epsilon, std::ldexp(1.0, -ep.q));
      EXPECT_DOUBLE_EQ(ep.delta, 0.1 / (2.0 * ep.q * ep.q));
      if (i > 0) {
        EXPECT_DOUBLE_EQ(ep.epsilon, r.trace.epochs[i - 1].epsilon / 2);
      }
      delta_sum += ep.delta;
      samples += ep.samples;
    }
    EXPECT_LE(delta_sum, 0.1);
    EXPECT_EQ(samples, r.trace.samples);
  }
}

TEST(BordaPropertyTest, TwoMatchingInstance) {
  const BipartiteGraph g = testing::SinglePositionGraph(2);
  const auto p = PreferenceMatrix::FromUpperEntries(g, {{0, 1, 0.8}});
  for (uint64_t seed = 0; seed < 10; ++seed) {
    DuelEnvironment env(g, p, seed);
    BordaOptions o;
    o.delta = 0.1;
    o.epsilon = 0.05;
    o.sampler.seed = seed;
    const BordaResult r = ClucbBordaPac(env, o);
    EXPECT_EQ(r.matching.edge_ids(), std::vector<int>{0});
    EXPECT_GT(r.trace.samples, 0);
  }
}

TEST(BordaPropertyTest, RevealedMeansReturnArgmax) {
  std::mt19937_64 rng(31);
  int exact_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testing::MakeRandomInstance(rng, 4, 2, 8);
    const auto all = EnumerateMaximumMatchings(inst.graph);
    if (all.size() < 2) continue;
    const GapReport gaps = ComputeGaps(inst.graph, inst.preference);
    if (gaps.borda_gap_min < 0.02) continue;
    BordaOptions o;
    o.delta = 0.1;
    o.epsilon = 0.05;
    o.sampler.seed = trial;
    o.revealed_means = gaps.edge_reward;
    DuelEnvironment env(inst.graph, inst.preference, trial);
    const BordaResult r = ClucbBordaPac(env, o);
    const double best = BordaScore(*gaps.borda_winner, inst.preference, all);
    EXPECT_GE(BordaScore(r.matching, inst.preference, all), best - o.epsilon);
    if (inst.graph.num_positions() * o.epsilon < gaps.borda_gap_min) {
      EXPECT_EQ(r.matching, *gaps.borda_winner);
      ++exact_checked;
    }
  }
  EXPECT_GT(exact_checked, 3);
}

}  // namespace
}  // namespace cpedb

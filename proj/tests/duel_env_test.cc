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

#include "cpedb/duel_env.h"

#include <cmath>
#include <random>

#include "cpedb/errors.h"
#include "gtest/gtest.h"
#include "testing/instances.h"

namespace cpedb {
namespace {

using ::cpedb::testing::kE1;
using ::cpedb::testing::kE2;
using ::cpedb::testing::kE3;
using ::cpedb::testing::kE4;

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

TEST(DuelEnvironmentTest, CertainOutcomes) {
  const BipartiteGraph g = testing::WorkedExampleGraph();
  DuelEnvironment env(g, testing::WorkedExamplePreference(g), 1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(env.SampleDuel(kE1, kE3));
    EXPECT_FALSE(env.SampleDuel(kE3, kE1));
  }
  EXPECT_EQ(env.total_samples(), 2000);
  EXPECT_EQ(env.pair_samples(kE1, kE3), 2000);
  EXPECT_EQ(env.pair_samples(kE3, kE1), 2000);
}

TEST(DuelEnvironmentTest, Frequencies) {
  const BipartiteGraph g = testing::SinglePositionGraph(2);
  DuelEnvironment fair(g, PreferenceMatrix::Symmetric(g), 3);
  int wins = 0;
  for (int i = 0; i < 10000; ++i) wins += fair.SampleDuel(0, 1);
  EXPECT_NEAR(wins / 10000.0, 0.5, 0.02);

  const BipartiteGraph fig = testing::WorkedExampleGraph();
  DuelEnvironment env(fig, testing::WorkedExamplePreference(fig), 4);
  wins = 0;
  for (int i = 0; i < 10000; ++i) wins += env.SampleDuel(kE2, kE1);
  EXPECT_NEAR(wins / 10000.0, 0.55, 0.02);
}

TEST(DuelEnvironmentTest, RejectsInvalidDuels) {
  const BipartiteGraph g = testing::WorkedExampleGraph();
  DuelEnvironment env(g, testing::WorkedExamplePreference(g), 1, 3);
  EXPECT_EQ(CodeOf([&] { env.SampleDuel(kE1, kE4); }),
            ErrorCode::kIncomparablePair);
  EXPECT_EQ(CodeOf([&] { env.SampleDuel(kE1, kE1); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(env.total_samples(), 0);
  for (int i = 0; i < 3; ++i) env.SampleDuel(kE1, kE2);
  EXPECT_TRUE(env.exhausted());
  EXPECT_EQ(CodeOf([&] { env.SampleDuel(kE1, kE2); }),
            ErrorCode::kBudgetExceeded);
  EXPECT_EQ(env.total_samples(), 3);
}

TEST(DuelEnvironmentTest, DeterministicGivenSeed) {
  const BipartiteGraph g = testing::WorkedExampleGraph();
  DuelEnvironment a(g, testing::WorkedExamplePreference(g), 42);
  DuelEnvironment b(g, testing::WorkedExamplePreference(g), 42);
  std::mt19937_64 order(5);
  const int pairs[3][2] = {{kE1, kE2}, {kE2, kE3}, {kE1, kE3}};
  for (int i = 0; i < 500; ++i) {
    const auto& p = pairs[order() % 3];
    EXPECT_EQ(a.SampleDuel(p[0], p[1]), b.SampleDuel(p[0], p[1]));
  }
  EXPECT_EQ(a.pair_samples(kE1, kE2), b.pair_samples(kE1, kE2));
}

TEST(DuelEnvironmentTest, Metadata) {
  const BipartiteGraph g = testing::WorkedExampleGraph();
  DuelEnvironment env(g, testing::WorkedExamplePreference(g), 9);
  EXPECT_EQ(env.metadata().seed, 9u);
  EXPECT_EQ(env.metadata().generator, "std::mt19937_64");
  // Complements are stored as 1 - p, so p(e3, e2) is 1 - 0.55 in binary.
  EXPECT_EQ(env.metadata().truth_hash, "3bbcff17cea2da01");
}

TEST(RadiusTest, Values) {
  EXPECT_EQ(ConfidenceRadius(0, 7, 0.1, 10), 1.0);
  EXPECT_NEAR(ConfidenceRadius(200, 1, 0.1, 10), 0.12238734153404082, 1e-12);
  for (int64_t t : {1, 10, 1000}) {
    double prev = ConfidenceRadius(1, t, 0.05, 4);
    for (int64_t n = 2; n < (1 << 20); n *= 2) {
      const double r = ConfidenceRadius(n, t, 0.05, 4);
      EXPECT_LT(r, prev);
      prev = r;
    }
  }
  PairStats pairs(5);
  EdgeStats edges(5);
  EXPECT_EQ(PairRadius(pairs, kE1, kE2, 3, 0.1, 4), 1.0);
  EXPECT_EQ(EdgeRadius(edges, kE1, 3, 0.1, 4), 1.0);
  for (int i = 0; i < 200; ++i) {
    pairs.Record(kE1, kE2, i % 3 == 0);
    edges.Record(kE1, i % 3 == 0);
  }
  EXPECT_NEAR(PairRadius(pairs, kE2, kE1, 1, 0.1, 10), 0.12238734153404082,
              1e-12);
  EXPECT_NEAR(EdgeRadius(edges, kE1, 1, 0.1, 10), 0.12238734153404082, 1e-12);
}

TEST(StatsTest, PairCountsAreSymmetric) {
  PairStats s(3);
  s.Record(0, 1, true);
  s.Record(1, 0, true);
  s.Record(0, 1, true);
  EXPECT_EQ(s.count(0, 1), 3);
  EXPECT_EQ(s.count(1, 0), 3);
  EXPECT_EQ(s.wins(0, 1) + s.wins(1, 0), 3);
  EXPECT_DOUBLE_EQ(s.mean(0, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.mean(0, 2), 0.5);
  EXPECT_EQ(s.total(), 3);
}

TEST(StatsTest, EdgeMeansStartAtZero) {
  EdgeStats s(2);
  EXPECT_EQ(s.mean(0), 0.0);
  s.Record(0, true);
  s.Record(0, false);
  s.Record(0, true);
  EXPECT_NEAR(s.mean(0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(s.count(0), 3);
  s.Reset();
  EXPECT_EQ(s.count(0), 0);
  EXPECT_EQ(s.mean(0), 0.0);
}

TEST(BoundsTest, ClampingAndConventions) {
  const BipartiteGraph g = testing::WorkedExampleGraph();
  PairStats s(5);
  // One sample of each outcome: mean 1/2 with radius above 1/2.
  s.Record(kE1, kE2, true);
  s.Record(kE1, kE2, false);
  const BoundMatrices b = ComputeBounds(g, s, 1, 0.1);
  const double c = ConfidenceRadius(2, 1, 0.1, 4);
  ASSERT_GT(c, 0.5);
  EXPECT_EQ(b.upper(kE1, kE2), 1.0);
  EXPECT_EQ(b.lower(kE1, kE2), 0.0);
  EXPECT_EQ(b.upper(kE1, kE1), 0.5);
  EXPECT_EQ(b.lower(kE4, kE4), 0.5);
  EXPECT_EQ(b.upper(kE1, kE4), 0.0);
  EXPECT_EQ(b.lower(kE1, kE4), 0.0);
  // Unsampled pairs carry the trivial interval.
  EXPECT_EQ(b.upper(kE2, kE3), 1.0);
  EXPECT_EQ(b.lower(kE2, kE3), 0.0);
}

TEST(BoundsTest, LowerNeverExceedsUpper) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::MakeRandomInstance(rng);
    const BipartiteGraph& g = inst.graph;
    PairStats s(g.num_edges());
    DuelEnvironment env(g, inst.preference, rng());
    const int rounds = std::uniform_int_distribution<int>(0, 300)(rng);
    for (int r = 0; r < rounds; ++r) {
      const int e =
          std::uniform_int_distribution<int>(0, g.num_edges() - 1)(rng);
      const auto bucket = g.bucket(g.position_of(e));
      if (bucket.size() < 2) continue;
      const int f = bucket[rng() % bucket.size()];
      if (f == e) continue;
      s.Record(e, f, env.SampleDuel(e, f));
    }
    const BoundMatrices b = ComputeBounds(g, s, rounds + 1, 0.1);
    for (int e = 0; e < g.num_edges(); ++e) {
      for (int f = 0; f < g.num_edges(); ++f) {
        EXPECT_LE(b.lower(e, f), b.upper(e, f));
        EXPECT_GE(b.lower(e, f), 0.0);
        EXPECT_LE(b.upper(e, f), 1.0);
        if (g.Comparable(e, f) && e != f) {
          EXPECT_NEAR(b.upper(e, f) + b.lower(f, e), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(BoundsTest, CoverageOnWorkedExample) {
  const BipartiteGraph g = testing::WorkedExampleGraph();
  const PreferenceMatrix p = testing::WorkedExamplePreference(g);
  const double delta = 0.1;
  int failures = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    DuelEnvironment env(g, p, seed);
    PairStats s(g.num_edges());
    for (int i = 0; i < 1000; ++i) {
      for (auto [e, f] : {std::pair{kE1, kE2}, {kE1, kE3}, {kE2, kE3},
                          {kE4, testing::kE5}}) {
        s.Record(e, f, env.SampleDuel(e, f));
      }
    }
    if (!BoundsCover(g, p, ComputeBounds(g, s, 1000, delta))) ++failures;
  }
  EXPECT_LE(failures, 20);
}

}  // namespace
}  // namespace cpedb

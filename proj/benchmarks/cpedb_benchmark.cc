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
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "cpedb/bipartite_graph.h"
#include "cpedb/condorcet_explore.h"
#include "cpedb/condorcet_oracle.h"
#include "cpedb/duel_env.h"
#include "cpedb/matching_oracle.h"
#include "cpedb/matching_sampler.h"
#include "cpedb/preference.h"

namespace cpedb {
namespace {

BipartiteGraph Fig1Graph() {
  return BipartiteGraph(4, 2, {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {3, 1}});
}

PreferenceMatrix Fig1Preference(const BipartiteGraph& g) {
  return PreferenceMatrix::FromUpperEntries(
      g, {{0, 1, 0.45}, {0, 2, 1.0}, {1, 2, 0.55}, {3, 4, 0.0}});
}

// Complete bipartite graph with n candidates and l positions.
BipartiteGraph CompleteGraph(int n, int l) {
  std::vector<Edge> edges;
  for (int c = 0; c < n; ++c) {
    for (int j = 0; j < l; ++j) edges.push_back({c, j});
  }
  return BipartiteGraph(n, l, std::move(edges));
}

PreferenceMatrix RandomPreference(const BipartiteGraph& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::tuple<int, int, double>> entries;
  for (int j = 0; j < g.num_positions(); ++j) {
    const auto bucket = g.bucket(j);
    for (size_t a = 0; a < bucket.size(); ++a) {
      for (size_t b = a + 1; b < bucket.size(); ++b) {
        entries.emplace_back(bucket[a], bucket[b], unit(rng));
      }
    }
  }
  return PreferenceMatrix::FromUpperEntries(g, entries);
}

void BM_Mwmc(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BipartiteGraph g = CompleteGraph(n, n / 2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(g.num_edges());
  for (double& x : w) x = unit(rng);
  MatchingOracle oracle(g);
  const bool lexicographic = state.range(1) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.MaximizeEdges(w, {}, lexicographic));
  }
}
BENCHMARK(BM_Mwmc)->ArgsProduct({{8, 16, 32, 64}, {0, 1}});

void BM_SamplerExact(benchmark::State& state) {
  const BipartiteGraph g = CompleteGraph(5, static_cast<int>(state.range(0)));
  MatchingSampler sampler(g, SamplerConfig{SamplerMode::kExact, 0.0, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(sampler.SampleEdges());
}
BENCHMARK(BM_SamplerExact)->Arg(2)->Arg(3);

void BM_SamplerMcmc(benchmark::State& state) {
  const BipartiteGraph g = CompleteGraph(5, static_cast<int>(state.range(0)));
  MatchingSampler sampler(g, SamplerConfig{SamplerMode::kMcmc, 0.05, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(sampler.SampleEdges());
  state.counters["steps"] = static_cast<double>(sampler.mcmc_steps());
}
BENCHMARK(BM_SamplerMcmc)->Arg(2)->Arg(3);

void BM_OracleFig1(benchmark::State& state) {
  const BipartiteGraph g = Fig1Graph();
  const PreferenceMatrix p = Fig1Preference(g);
  const double eps = state.range(0) / 100.0;
  const ConstraintPair c1{{0}, {}};
  int64_t iterations = 0;
  for (auto _ : state) {
    const OracleResult r = SolveMinimax(g, c1, {}, p.matrix(), eps);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_OracleFig1)->Arg(10)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_OracleRandom(benchmark::State& state) {
  const BipartiteGraph g = CompleteGraph(4, 2);
  const PreferenceMatrix p = RandomPreference(g, 7);
  const double eps = state.range(0) / 100.0;
  int64_t iterations = 0;
  for (auto _ : state) {
    const OracleResult r = SolveMinimax(g, {}, {}, p.matrix(), eps);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_OracleRandom)->Arg(10)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ExactGameValue(benchmark::State& state) {
  const BipartiteGraph g = CompleteGraph(4, 2);
  const PreferenceMatrix p = RandomPreference(g, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExactGameValue(g, {}, {}, p.matrix()));
  }
}
BENCHMARK(BM_ExactGameValue)->Unit(benchmark::kMicrosecond);

void BM_CarCondFig1(benchmark::State& state) {
  const BipartiteGraph g = Fig1Graph();
  const PreferenceMatrix p = Fig1Preference(g);
  uint64_t seed = 1;
  int64_t samples = 0;
  for (auto _ : state) {
    DuelEnvironment env(g, p, seed++);
    const CarCond run = RunCarCond(env, CarCondOptions{});
    samples = run.trace().samples;
  }
  state.counters["samples"] = static_cast<double>(samples);
}
BENCHMARK(BM_CarCondFig1)->Iterations(3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cpedb

BENCHMARK_MAIN();

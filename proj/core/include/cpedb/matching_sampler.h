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

#ifndef CPEDB_MATCHING_SAMPLER_H_
#define CPEDB_MATCHING_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cpedb/bipartite_graph.h"

namespace cpedb {

// Square graph obtained by adding n - l fictitious positions, each adjacent
// to every candidate. Base edges keep their indices: the fictitious positions
// sort after the real ones, so augmented edge i < m is base edge i.
struct AugmentedGraph {
  BipartiteGraph graph;
  int num_base_edges = 0;
  int num_fictitious = 0;

  bool IsFictitious(int e) const { return e >= num_base_edges; }
};

AugmentedGraph Augment(const BipartiteGraph& graph);

enum class SamplerMode { kExact, kMcmc };

struct SamplerConfig {
  SamplerMode mode = SamplerMode::kExact;
  double eta = 0.0;
  // Transitions per draw in MCMC mode; 0 selects 10 m^2 l.
  int64_t mcmc_steps = 0;
  uint64_t seed = 0;
};

// Throws kInvalidArgument on eta outside [0, 1) or negative steps.
void ValidateSamplerConfig(const SamplerConfig& config);

int64_t DefaultMcmcSteps(const BipartiteGraph& graph);

// Draws maximum matchings of the base graph. Exact mode is uniform over the
// enumeration. MCMC mode restarts a lazy add/remove/slide chain over perfect
// and near-perfect matchings of the augmented graph at a fixed state for
// every draw, runs the configured number of transitions, then continues until
// the state is perfect.
class MatchingSampler {
 public:
  MatchingSampler(const BipartiteGraph& graph, const SamplerConfig& config,
                  int edge_cap = kDefaultEnumerationCap);

  // Edge at each position of the drawn matching. The span is valid until the
  // next call.
  std::span<const int> SampleEdges(std::mt19937_64& rng);
  std::span<const int> SampleEdges() { return SampleEdges(rng_); }
  Matching Sample(std::mt19937_64& rng);
  Matching Sample() { return Sample(rng_); }

  const SamplerConfig& config() const { return config_; }
  // Recorded only; neither mode changes behaviour with eta.
  void set_eta(double eta);
  std::mt19937_64& rng() { return rng_; }
  int64_t mcmc_steps() const { return steps_; }
  // Transitions spent by the last MCMC draw.
  int64_t last_chain_length() const { return last_chain_length_; }

 private:
  void ResetChain();
  void Step(uint64_t bits);

  const BipartiteGraph* graph_;
  SamplerConfig config_;
  std::mt19937_64 rng_;
  int64_t steps_ = 0;
  int64_t last_chain_length_ = 0;

  std::vector<std::vector<int>> enumerated_;

  std::optional<AugmentedGraph> augmented_;
  std::vector<int> start_position_match_;
  std::vector<int> position_match_;   // candidate at each position or -1
  std::vector<int> candidate_match_;  // position of each candidate or -1
  int holes_ = 0;
  std::vector<int> out_;
};

// (1/2) sum_x |p(x) - q(x)|.
double TvDistance(std::span<const double> p, std::span<const double> q);
// Distance between a histogram of draws and the uniform distribution on its
// support.
double TvDistanceToUniform(std::span<const int64_t> counts);

}  // namespace cpedb

#endif  // CPEDB_MATCHING_SAMPLER_H_

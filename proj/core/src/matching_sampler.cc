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

#include "cpedb/matching_sampler.h"

#include <cmath>
#include <numeric>
#include <string>

#include "cpedb/errors.h"
#include "cpedb/matching_oracle.h"

namespace cpedb {

AugmentedGraph Augment(const BipartiteGraph& graph) {
  const int n = graph.num_candidates();
  const int l = graph.num_positions();
  std::vector<Edge> edges = graph.edges();
  for (int j = l; j < n; ++j) {
    for (int c = 0; c < n; ++c) edges.push_back({c, j});
  }
  return AugmentedGraph{BipartiteGraph(n, n, std::move(edges)),
                        graph.num_edges(), n - l};
}

void ValidateSamplerConfig(const SamplerConfig& config) {
  if (!(config.eta >= 0.0 && config.eta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sampler eta must lie in [0, 1), got " +
                    std::to_string(config.eta));
  }
  if (config.mcmc_steps < 0) {
    throw Error(ErrorCode::kInvalidArgument, "mcmc_steps must be positive");
  }
}

int64_t DefaultMcmcSteps(const BipartiteGraph& graph) {
  const int64_t m = graph.num_edges();
  return 10 * m * m * graph.num_positions();
}

MatchingSampler::MatchingSampler(const BipartiteGraph& graph,
                                 const SamplerConfig& config, int edge_cap)
    : graph_(&graph), config_(config), rng_(config.seed) {
  ValidateSamplerConfig(config);
  if (config.mode == SamplerMode::kExact) {
    for (const Matching& m : EnumerateMaximumMatchings(graph, {}, edge_cap)) {
      enumerated_.push_back(m.edge_ids());
    }
    return;
  }
  steps_ = config.mcmc_steps > 0 ? config.mcmc_steps : DefaultMcmcSteps(graph);
  augmented_ = Augment(graph);
  const int n = graph.num_candidates();
  const int l = graph.num_positions();
  // Lexicographically smallest maximum matching, then fictitious positions
  // filled by the free candidates in increasing order.
  const Matching first = Mwmc(graph, std::vector<double>(graph.num_edges()));
  start_position_match_.assign(n, -1);
  std::vector<uint8_t> used(n, 0);
  for (int j = 0; j < l; ++j) {
    const int c = graph.candidate_of(first.EdgeAt(j));
    start_position_match_[j] = c;
    used[c] = 1;
  }
  int j = l;
  for (int c = 0; c < n; ++c) {
    if (!used[c]) start_position_match_[j++] = c;
  }
  out_.resize(l);
}

void MatchingSampler::set_eta(double eta) {
  SamplerConfig next = config_;
  next.eta = eta;
  ValidateSamplerConfig(next);
  config_ = next;
}

void MatchingSampler::ResetChain() {
  const int n = graph_->num_candidates();
  position_match_ = start_position_match_;
  candidate_match_.assign(n, -1);
  for (int j = 0; j < n; ++j) candidate_match_[position_match_[j]] = j;
  holes_ = 0;
}

void MatchingSampler::Step(uint64_t bits) {
  if (bits & 1) return;  // lazy half
  const BipartiteGraph& g = augmented_->graph;
  const int e = static_cast<int>((bits >> 1) % g.num_edges());
  const int u = g.candidate_of(e);
  const int v = g.position_of(e);
  if (holes_ == 0) {
    if (position_match_[v] == u) {
      position_match_[v] = -1;
      candidate_match_[u] = -1;
      holes_ = 1;
    }
    return;
  }
  const bool u_free = candidate_match_[u] < 0;
  const bool v_free = position_match_[v] < 0;
  if (u_free && v_free) {
    position_match_[v] = u;
    candidate_match_[u] = v;
    holes_ = 0;
  } else if (u_free) {
    candidate_match_[position_match_[v]] = -1;
    position_match_[v] = u;
    candidate_match_[u] = v;
  } else if (v_free) {
    position_match_[candidate_match_[u]] = -1;
    candidate_match_[u] = v;
    position_match_[v] = u;
  }
}

std::span<const int> MatchingSampler::SampleEdges(std::mt19937_64& rng) {
  if (config_.mode == SamplerMode::kExact) {
    std::uniform_int_distribution<size_t> pick(0, enumerated_.size() - 1);
    return enumerated_[pick(rng)];
  }
  ResetChain();
  int64_t t = 0;
  for (; t < steps_; ++t) Step(rng());
  const int64_t budget = t + 10 * steps_ + 1000;
  while (holes_ != 0) {
    if (t >= budget) {
      last_chain_length_ = t;
      throw Error(ErrorCode::kNotMixed,
                  "matching chain did not return to a perfect matching");
    }
    Step(rng());
    ++t;
  }
  last_chain_length_ = t;
  for (int j = 0; j < graph_->num_positions(); ++j) {
    out_[j] = graph_->FindEdge(position_match_[j], j);
  }
  return out_;
}

Matching MatchingSampler::Sample(std::mt19937_64& rng) {
  const auto edges = SampleEdges(rng);
  return Matching(*graph_, std::vector<int>(edges.begin(), edges.end()));
}

double TvDistance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kInvalidArgument, "distribution sizes differ");
  }
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double TvDistanceToUniform(std::span<const int64_t> counts) {
  const double total =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(),
                                          int64_t{0}));
  if (counts.empty() || total <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "empty histogram");
  }
  const double u = 1.0 / counts.size();
  double s = 0.0;
  for (int64_t c : counts) s += std::abs(c / total - u);
  return 0.5 * s;
}

}  // namespace cpedb

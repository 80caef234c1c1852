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

#include "cpedb/bipartite_graph.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "cpedb/errors.h"

namespace cpedb {

namespace {

// Kuhn's augmenting path search from position j over allowed edges.
bool Augment(const BipartiteGraph& g, const std::vector<uint8_t>& allowed,
             int position, std::vector<uint8_t>& visited,
             std::vector<int>& candidate_match) {
  for (int e : g.bucket(position)) {
    if (!allowed[e]) continue;
    const int c = g.candidate_of(e);
    if (visited[c]) continue;
    visited[c] = 1;
    if (candidate_match[c] < 0 ||
        Augment(g, allowed, candidate_match[c], visited, candidate_match)) {
      candidate_match[c] = position;
      return true;
    }
  }
  return false;
}

int MaxCardinality(const BipartiteGraph& g,
                   const std::vector<uint8_t>& allowed) {
  std::vector<int> candidate_match(g.num_candidates(), -1);
  int size = 0;
  for (int j = 0; j < g.num_positions(); ++j) {
    std::vector<uint8_t> visited(g.num_candidates(), 0);
    if (Augment(g, allowed, j, visited, candidate_match)) ++size;
  }
  return size;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(int a, int b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<int> parent_;
};

void EnumerateFrom(const BipartiteGraph& g, const std::vector<uint8_t>& allowed,
                   int position, std::vector<uint8_t>& used,
                   std::vector<int>& current, std::vector<Matching>& out) {
  if (position == g.num_positions()) {
    out.emplace_back(g, current);
    return;
  }
  for (int e : g.bucket(position)) {
    if (!allowed[e]) continue;
    const int c = g.candidate_of(e);
    if (used[c]) continue;
    used[c] = 1;
    current.push_back(e);
    EnumerateFrom(g, allowed, position + 1, used, current, out);
    current.pop_back();
    used[c] = 0;
  }
}

// Edges still usable once R is deleted and A forces its endpoints.
std::vector<uint8_t> AllowedEdges(const BipartiteGraph& g,
                                  const ConstraintPair& c) {
  std::vector<uint8_t> allowed(g.num_edges(), 1);
  for (int r : c.rejected) allowed[r] = 0;
  for (int a : c.accepted) {
    for (int e = 0; e < g.num_edges(); ++e) {
      if (e == a) continue;
      if (g.candidate_of(e) == g.candidate_of(a) ||
          g.position_of(e) == g.position_of(a)) {
        allowed[e] = 0;
      }
    }
  }
  return allowed;
}

}  // namespace

BipartiteGraph::BipartiteGraph(int num_candidates, int num_positions,
                               std::vector<Edge> edges)
    : num_candidates_(num_candidates), num_positions_(num_positions) {
  if (num_candidates <= 0 || num_positions <= 0) {
    throw Error(ErrorCode::kInvalidGraph,
                "candidate and position counts must be positive");
  }
  if (num_positions > num_candidates) {
    throw Error(ErrorCode::kInvalidGraph,
                "more positions than candidates: no maximum matching covers "
                "every position");
  }
  for (const Edge& e : edges) {
    if (e.candidate < 0 || e.candidate >= num_candidates || e.position < 0 ||
        e.position >= num_positions) {
      throw Error(ErrorCode::kInvalidGraph,
                  "edge (" + std::to_string(e.candidate) + ", " +
                      std::to_string(e.position) + ") out of range");
    }
  }
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (edges[a].position != edges[b].position) {
      return edges[a].position < edges[b].position;
    }
    return edges[a].candidate < edges[b].candidate;
  });
  canonical_index_.resize(edges.size());
  edges_.reserve(edges.size());
  for (size_t i = 0; i < order.size(); ++i) {
    const Edge& e = edges[order[i]];
    if (!edges_.empty() && edges_.back() == e) {
      throw Error(ErrorCode::kInvalidGraph,
                  "duplicate edge (" + std::to_string(e.candidate) + ", " +
                      std::to_string(e.position) + ")");
    }
    canonical_index_[order[i]] = static_cast<int>(i);
    edges_.push_back(e);
  }
  position_buckets_.assign(num_positions_, {});
  for (int i = 0; i < num_edges(); ++i) {
    position_buckets_[edges_[i].position].push_back(i);
  }
  for (const auto& b : position_buckets_) {
    const int64_t s = static_cast<int64_t>(b.size());
    num_duels_ += s * (s - 1) / 2;
  }
  std::vector<uint8_t> all(edges_.size(), 1);
  if (MaxCardinality(*this, all) != num_positions_) {
    throw Error(ErrorCode::kInvalidGraph,
                "no matching covers all " + std::to_string(num_positions_) +
                    " positions");
  }
}

int BipartiteGraph::FindEdge(int candidate, int position) const {
  if (position < 0 || position >= num_positions_) return -1;
  for (int e : position_buckets_[position]) {
    if (edges_[e].candidate == candidate) return e;
  }
  return -1;
}

Matching::Matching(const BipartiteGraph& graph, std::vector<int> edge_ids)
    : edge_ids_(std::move(edge_ids)), chi_(graph.num_edges(), 0) {
  std::sort(edge_ids_.begin(), edge_ids_.end());
  if (static_cast<int>(edge_ids_.size()) != graph.num_positions()) {
    throw Error(ErrorCode::kInvalidArgument,
                "matching must have one edge per position");
  }
  std::vector<uint8_t> used(graph.num_candidates(), 0);
  for (int j = 0; j < graph.num_positions(); ++j) {
    const int e = edge_ids_[j];
    if (e < 0 || e >= graph.num_edges()) {
      throw Error(ErrorCode::kInvalidArgument, "edge index out of range");
    }
    if (graph.position_of(e) != j) {
      throw Error(ErrorCode::kInvalidArgument,
                  "matching uses a position twice");
    }
    if (used[graph.candidate_of(e)]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "matching uses a candidate twice");
    }
    used[graph.candidate_of(e)] = 1;
    chi_[e] = 1;
  }
}

void ValidateConstraints(const BipartiteGraph& graph, const ConstraintPair& c) {
  const int m = graph.num_edges();
  std::vector<uint8_t> in_a(m, 0);
  std::vector<uint8_t> cand(graph.num_candidates(), 0);
  std::vector<uint8_t> pos(graph.num_positions(), 0);
  for (int a : c.accepted) {
    if (a < 0 || a >= m) {
      throw Error(ErrorCode::kInvalidArgument, "accepted edge out of range");
    }
    if (in_a[a]) continue;
    in_a[a] = 1;
    if (cand[graph.candidate_of(a)] || pos[graph.position_of(a)]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "accepted edges are not a partial matching");
    }
    cand[graph.candidate_of(a)] = 1;
    pos[graph.position_of(a)] = 1;
  }
  for (int r : c.rejected) {
    if (r < 0 || r >= m) {
      throw Error(ErrorCode::kInvalidArgument, "rejected edge out of range");
    }
    if (in_a[r]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge " + std::to_string(r) + " both accepted and rejected");
    }
  }
}

bool Satisfies(const Matching& matching, const ConstraintPair& c) {
  for (int a : c.accepted) {
    if (!matching.Contains(a)) return false;
  }
  for (int r : c.rejected) {
    if (matching.Contains(r)) return false;
  }
  return true;
}

RestrictedGraph Restrict(const BipartiteGraph& graph, const ConstraintPair& c) {
  ValidateConstraints(graph, c);
  const std::vector<uint8_t> allowed = AllowedEdges(graph, c);
  if (MaxCardinality(graph, allowed) != graph.num_positions()) {
    throw Error(ErrorCode::kInfeasibleConstraints,
                "no maximum matching satisfies the constraints");
  }
  std::vector<Edge> edges;
  std::vector<int> to_parent;
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (!allowed[e]) continue;
    edges.push_back(graph.edge(e));
    to_parent.push_back(e);
  }
  // Kept edges stay in canonical order, so restricted index i maps to
  // to_parent[i] directly.
  return RestrictedGraph{
      BipartiteGraph(graph.num_candidates(), graph.num_positions(),
                     std::move(edges)),
      std::move(to_parent)};
}

std::vector<Matching> EnumerateMaximumMatchings(const BipartiteGraph& graph,
                                                const ConstraintPair& c,
                                                int edge_cap) {
  if (graph.num_edges() > edge_cap) {
    throw Error(ErrorCode::kInstanceTooLarge,
                std::to_string(graph.num_edges()) +
                    " edges exceed the enumeration cap of " +
                    std::to_string(edge_cap));
  }
  ValidateConstraints(graph, c);
  const std::vector<uint8_t> allowed = AllowedEdges(graph, c);
  std::vector<Matching> out;
  std::vector<uint8_t> used(graph.num_candidates(), 0);
  std::vector<int> current;
  EnumerateFrom(graph, allowed, 0, used, current, out);
  if (out.empty()) {
    throw Error(ErrorCode::kInfeasibleConstraints,
                "no maximum matching satisfies the constraints");
  }
  return out;
}

int UnionWidth(const BipartiteGraph& graph, const Matching& m1,
               const Matching& m2) {
  const int n = graph.num_candidates();
  UnionFind uf(n + graph.num_positions());
  std::set<int> edges(m1.edge_ids().begin(), m1.edge_ids().end());
  edges.insert(m2.edge_ids().begin(), m2.edge_ids().end());
  for (int e : edges) uf.Union(graph.candidate_of(e), n + graph.position_of(e));
  std::vector<int> count(n + graph.num_positions(), 0);
  int best = 0;
  for (int e : edges) {
    best = std::max(best, ++count[uf.Find(graph.candidate_of(e))]);
  }
  return best;
}

int Width(const BipartiteGraph& graph, int edge_cap) {
  const std::vector<Matching> all =
      EnumerateMaximumMatchings(graph, {}, edge_cap);
  int best = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t k = i + 1; k < all.size(); ++k) {
      best = std::max(best, UnionWidth(graph, all[i], all[k]));
    }
  }
  return best;
}

}  // namespace cpedb

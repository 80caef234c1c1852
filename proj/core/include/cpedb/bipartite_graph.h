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

#ifndef CPEDB_BIPARTITE_GRAPH_H_
#define CPEDB_BIPARTITE_GRAPH_H_

#include <cstdint>
#include <span>
#include <vector>

namespace cpedb {

struct Edge {
  int candidate = 0;
  int position = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Candidate/position bipartite graph. Edges are kept in canonical order:
// sorted by position, then by candidate. Edge index i always refers to the
// i-th edge in that order. Construction validates that a matching covering
// every position exists.
class BipartiteGraph {
 public:
  BipartiteGraph(int num_candidates, int num_positions,
                 std::vector<Edge> edges);

  int num_candidates() const { return num_candidates_; }
  int num_positions() const { return num_positions_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int position_of(int e) const { return edges_[e].position; }
  int candidate_of(int e) const { return edges_[e].candidate; }

  // E_j: indices of the edges incident to position j, ascending.
  std::span<const int> bucket(int position) const {
    return position_buckets_[position];
  }
  const std::vector<std::vector<int>>& position_buckets() const {
    return position_buckets_;
  }

  bool Comparable(int e1, int e2) const {
    return edges_[e1].position == edges_[e2].position;
  }

  // Number of unordered comparable pairs, sum_j |E_j| (|E_j| - 1) / 2.
  int64_t num_duels() const { return num_duels_; }

  // canonical_index()[i] is the canonical index of the i-th input edge.
  const std::vector<int>& canonical_index() const { return canonical_index_; }

  // Canonical index of edge (candidate, position), or -1.
  int FindEdge(int candidate, int position) const;

 private:
  int num_candidates_;
  int num_positions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> position_buckets_;
  std::vector<int> canonical_index_;
  int64_t num_duels_ = 0;
};

// A maximum matching: exactly one edge per position, no shared candidate.
// Because edges are position-major, the sorted edge list is also indexed by
// position: edge_ids()[j] is e(M, j).
class Matching {
 public:
  Matching() = default;

  // Validates cardinality and disjointness; throws kInvalidArgument.
  Matching(const BipartiteGraph& graph, std::vector<int> edge_ids);

  const std::vector<int>& edge_ids() const { return edge_ids_; }
  const std::vector<uint8_t>& chi() const { return chi_; }
  int size() const { return static_cast<int>(edge_ids_.size()); }
  bool Contains(int e) const { return chi_[e] != 0; }
  int EdgeAt(int position) const { return edge_ids_[position]; }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.edge_ids_ == b.edge_ids_;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    return a.edge_ids_ < b.edge_ids_;
  }

 private:
  std::vector<int> edge_ids_;
  std::vector<uint8_t> chi_;
};

// Accepted edges A must be in the matching; rejected edges R must not be.
struct ConstraintPair {
  std::vector<int> accepted;
  std::vector<int> rejected;

  bool empty() const { return accepted.empty() && rejected.empty(); }
  friend bool operator==(const ConstraintPair&, const ConstraintPair&) =
      default;
};

// Throws kInvalidArgument when indices are out of range, A and R intersect,
// or A shares an endpoint.
void ValidateConstraints(const BipartiteGraph& graph, const ConstraintPair& c);

// True if the matching respects the constraint pair.
bool Satisfies(const Matching& matching, const ConstraintPair& c);

struct RestrictedGraph {
  BipartiteGraph graph;
  // to_parent[i] is the index in the original graph of restricted edge i.
  std::vector<int> to_parent;
};

// Deletes R and every edge conflicting with an edge of A. Every maximum
// matching of the result contains A. Throws kInfeasibleConstraints when no
// such matching exists.
RestrictedGraph Restrict(const BipartiteGraph& graph, const ConstraintPair& c);

inline constexpr int kDefaultEnumerationCap = 24;

// All maximum matchings satisfying c, lexicographically sorted. Throws
// kInstanceTooLarge above the edge cap, kInfeasibleConstraints when empty.
std::vector<Matching> EnumerateMaximumMatchings(
    const BipartiteGraph& graph, const ConstraintPair& c = {},
    int edge_cap = kDefaultEnumerationCap);

// Edge count of the largest connected component of the union graph M1 u M2.
int UnionWidth(const BipartiteGraph& graph, const Matching& m1,
               const Matching& m2);

// Maximum UnionWidth over distinct pairs of maximum matchings; 0 when the
// maximum matching is unique.
int Width(const BipartiteGraph& graph, int edge_cap = kDefaultEnumerationCap);

}  // namespace cpedb

#endif  // CPEDB_BIPARTITE_GRAPH_H_

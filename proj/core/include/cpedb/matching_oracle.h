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

#ifndef CPEDB_MATCHING_ORACLE_H_
#define CPEDB_MATCHING_ORACLE_H_

#include <optional>
#include <span>
#include <vector>

#include "cpedb/bipartite_graph.h"

namespace cpedb {

using EdgeWeights = std::vector<double>;

double TotalWeight(const Matching& matching, std::span<const double> weights);

// Maximum-weight matching among all maximum-cardinality matchings of a fixed
// graph, solved as a square assignment problem: candidates against the real
// positions plus n - l zero-weight dummy positions, with missing edges
// forbidden. Every feasible assignment therefore covers all real positions,
// so cardinality dominates weight without any weight shift.
//
// Ties are resolved toward the lexicographically smallest edge set by a
// greedy pass over the tight subgraph of the optimal dual.
//
// Holds scratch buffers: one instance per thread.
class MatchingOracle {
 public:
  explicit MatchingOracle(const BipartiteGraph& graph);

  const BipartiteGraph& graph() const { return *graph_; }

  // std::nullopt when no maximum matching satisfies c. Constraints are not
  // validated here; callers pass well-formed pairs.
  std::optional<Matching> Maximize(std::span<const double> weights,
                                   const ConstraintPair& c = {},
                                   bool lexicographic = true);
  std::optional<Matching> Minimize(std::span<const double> costs,
                                   const ConstraintPair& c = {},
                                   bool lexicographic = true);

  // Allocation-free variants: the edge at each position, valid until the
  // next call, or an empty span when infeasible.
  std::span<const int> MaximizeEdges(std::span<const double> weights,
                                     const ConstraintPair& c = {},
                                     bool lexicographic = true);
  std::span<const int> MinimizeEdges(std::span<const double> costs,
                                     const ConstraintPair& c = {},
                                     bool lexicographic = true);

  // Tie-break tolerance on reduced costs, relative to 1 + max |weight|.
  static constexpr double kTieTolerance = 1e-9;

 private:
  bool Solve(std::span<const double> weights, double sign,
             const ConstraintPair& c, bool lexicographic);
  bool Hungarian();
  bool LexicographicRepair(double tol);
  bool TightFeasible(int from_column, double tol);

  const BipartiteGraph* graph_;
  int n_;
  int l_;
  // edge_at_[c * l_ + j]: canonical edge for (c, j) or -1.
  std::vector<int> edge_at_;
  std::vector<double> cost_;
  std::vector<uint8_t> allowed_;
  std::vector<double> u_, v_, minv_;
  std::vector<int> p_, way_;
  std::vector<uint8_t> used_;
  // Column assignment for the lexicographic pass.
  std::vector<int> col_row_, row_col_;
  std::vector<uint8_t> row_fixed_;
  std::vector<int> kuhn_row_match_, kuhn_col_match_;
  std::vector<uint8_t> kuhn_seen_;
  std::vector<int> result_;
};

// Throws kInfeasibleConstraints. Validates constraints and weights.
Matching Mwmc(const BipartiteGraph& graph, std::span<const double> weights,
              const ConstraintPair& c = {});
Matching MinCostMaximumMatching(const BipartiteGraph& graph,
                                std::span<const double> costs,
                                const ConstraintPair& c = {});

}  // namespace cpedb

#endif  // CPEDB_MATCHING_ORACLE_H_

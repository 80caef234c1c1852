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

#ifndef CPEDB_CONDORCET_ORACLE_H_
#define CPEDB_CONDORCET_ORACLE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cpedb/bipartite_graph.h"
#include "cpedb/matching_oracle.h"
#include "cpedb/preference.h"

namespace cpedb {

// A point of a matching polytope kept as a convex combination of vertices.
class PolytopePoint {
 public:
  PolytopePoint() = default;
  PolytopePoint(const BipartiteGraph& graph, std::vector<Matching> vertices,
                std::vector<double> weights);
  static PolytopePoint Vertex(const BipartiteGraph& graph, Matching m);

  bool empty() const { return vertices_.empty(); }
  const std::vector<Matching>& vertices() const { return vertices_; }
  const std::vector<double>& weights() const { return weights_; }
  // x = sum_i weight_i chi(vertex_i).
  const std::vector<double>& dense() const { return dense_; }

  // Empty string when every invariant holds: positive weights summing to 1,
  // vertices respecting c, dense vector consistent, coordinates summing to l.
  std::string Check(const BipartiteGraph& graph, const ConstraintPair& c,
                    double tol = 1e-9) const;

 private:
  std::vector<Matching> vertices_;
  std::vector<double> weights_;
  std::vector<double> dense_;
};

struct InnerMinResult {
  double value = 0.0;
  Matching minimizer;
};

// min over y in P(c2) of (1/l) x^T Q y, attained at a vertex.
// Throws kInfeasibleConstraints.
InnerMinResult InnerMin(const BipartiteGraph& graph, std::span<const double> x,
                        const PairwiseMatrix& q, const ConstraintPair& c2);

enum class ProjectionVariant {
  kStandard,  // gamma_t = 2 / (t + 1)
  kAwayStep,  // away steps with exact line search
};

struct ProjectionResult {
  PolytopePoint point;
  int64_t iterations = 0;
  double fw_gap = 0.0;
  // 2 * gap <= eps^2 was observed, bounding the distance to the projection.
  bool certified = false;
};

// Frank-Wolfe approximation of the Euclidean projection of p onto P(c),
// run for at most ceil(16 l^2 / eps^2) iterations and stopped early once the
// duality gap certifies ||x - proj(p)|| <= eps. A non-empty start point seeds
// the iteration instead of the lexicographically smallest vertex.
ProjectionResult ApproxProject(const BipartiteGraph& graph,
                               std::span<const double> p,
                               const ConstraintPair& c, double eps,
                               ProjectionVariant variant =
                                   ProjectionVariant::kStandard,
                               const PolytopePoint& start = {});

inline constexpr int64_t kDefaultOracleIterationCap = 200'000;

struct OracleOptions {
  int64_t iteration_cap = kDefaultOracleIterationCap;
  ProjectionVariant projection = ProjectionVariant::kAwayStep;
  // Stop once the duality gap against the averaged best responses is at
  // most eps. Horizons then grow geometrically up to min(T, cap), each stage
  // restarting the schedule from the best point found. Off: one run of
  // exactly T iterations, rejected when T exceeds the cap.
  bool certificate = true;
  // Called with (t, x_t, g(x_t)) for every evaluated iterate.
  std::function<void(int64_t, const PolytopePoint&, double)> observer;
};

struct OracleResult {
  // -1 with an empty point when the max side is infeasible.
  double value = -1.0;
  PolytopePoint point;
  int64_t iterations = 0;
  int64_t projection_calls = 0;
  // Upper bound on the max-min value; +inf when never computed.
  double upper_bound = 0.0;
  bool certified = false;
};

// Previous solution for the same constraint pair, refined in place.
struct OracleWarmStart {
  PolytopePoint x;
  std::vector<double> y_bar;
};

// Approximately solves max over x in P(c1) of min over y in P(c2) of
// (1/l) x^T Q y by projected subgradient ascent with Frank-Wolfe projection.
// The value is that of the best iterate, so it never exceeds the optimum and
// is within eps of it. Throws kInfeasibleMinSide when P(c2) is empty and
// kOracleBudgetExceeded when the iteration cap ends the run uncertified
// below the nominal horizon.
class MinimaxOracle {
 public:
  explicit MinimaxOracle(const BipartiteGraph& graph,
                         OracleOptions options = {});

  OracleResult Solve(const ConstraintPair& c1, const ConstraintPair& c2,
                     const PairwiseMatrix& q, double eps,
                     OracleWarmStart* warm = nullptr);

  // Nominal horizon ceil((4 l K)^2 / eps^2).
  int64_t Horizon(double eps) const;

 private:
  double MinResponse(std::span<const double> x, const PairwiseMatrix& q,
                     const ConstraintPair& c2, std::vector<int>* response);

  const BipartiteGraph* graph_;
  OracleOptions options_;
  MatchingOracle oracle_;
  std::vector<double> costs_;
  std::vector<double> step_;
  std::vector<double> y_bar_;
  std::vector<int> response_;
};

OracleResult SolveMinimax(const BipartiteGraph& graph,
                          const ConstraintPair& c1, const ConstraintPair& c2,
                          const PairwiseMatrix& q, double eps,
                          OracleOptions options = {});

// Value of the finite game between the constrained matchings of both sides
// with payoff (1/l) chi_i^T Q chi_j, by the simplex method.
double ExactGameValue(const BipartiteGraph& graph, const ConstraintPair& c1,
                      const ConstraintPair& c2, const PairwiseMatrix& q,
                      int edge_cap = kDefaultEnumerationCap);

// Row player's value of the zero-sum game max_x min_y x^T a y for a
// row-major rows x cols payoff matrix.
double MatrixGameValue(std::span<const double> a, int rows, int cols);

}  // namespace cpedb

#endif  // CPEDB_CONDORCET_ORACLE_H_

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

#include "cpedb/matching_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpedb/errors.h"

namespace cpedb {

namespace {
constexpr double kForbidden = std::numeric_limits<double>::infinity();
}  // namespace

double TotalWeight(const Matching& matching, std::span<const double> weights) {
  double total = 0.0;
  for (int e : matching.edge_ids()) total += weights[e];
  return total;
}

MatchingOracle::MatchingOracle(const BipartiteGraph& graph)
    : graph_(&graph),
      n_(graph.num_candidates()),
      l_(graph.num_positions()),
      edge_at_(static_cast<size_t>(n_) * l_, -1),
      cost_(static_cast<size_t>(n_) * n_),
      allowed_(static_cast<size_t>(n_) * n_),
      u_(n_ + 1),
      v_(n_ + 1),
      minv_(n_ + 1),
      p_(n_ + 1),
      way_(n_ + 1),
      used_(n_ + 1),
      col_row_(n_),
      row_col_(n_),
      row_fixed_(n_),
      kuhn_row_match_(n_),
      kuhn_col_match_(n_),
      kuhn_seen_(n_),
      result_(l_) {
  for (int e = 0; e < graph.num_edges(); ++e) {
    edge_at_[graph.candidate_of(e) * l_ + graph.position_of(e)] = e;
  }
}

std::optional<Matching> MatchingOracle::Maximize(
    std::span<const double> weights, const ConstraintPair& c,
    bool lexicographic) {
  if (!Solve(weights, 1.0, c, lexicographic)) return std::nullopt;
  return Matching(*graph_, result_);
}

std::optional<Matching> MatchingOracle::Minimize(std::span<const double> costs,
                                                 const ConstraintPair& c,
                                                 bool lexicographic) {
  if (!Solve(costs, -1.0, c, lexicographic)) return std::nullopt;
  return Matching(*graph_, result_);
}

std::span<const int> MatchingOracle::MaximizeEdges(
    std::span<const double> weights, const ConstraintPair& c,
    bool lexicographic) {
  if (!Solve(weights, 1.0, c, lexicographic)) return {};
  return result_;
}

std::span<const int> MatchingOracle::MinimizeEdges(
    std::span<const double> costs, const ConstraintPair& c,
    bool lexicographic) {
  if (!Solve(costs, -1.0, c, lexicographic)) return {};
  return result_;
}

bool MatchingOracle::Solve(std::span<const double> weights,
                                              double sign,
                                              const ConstraintPair& c,
                                              bool lexicographic) {
  double scale = 1.0;
  for (int row = 0; row < n_; ++row) {
    for (int col = 0; col < n_; ++col) {
      const size_t k = static_cast<size_t>(row) * n_ + col;
      if (col < l_) {
        const int e = edge_at_[row * l_ + col];
        allowed_[k] = e >= 0;
        cost_[k] = e >= 0 ? -sign * weights[e] : kForbidden;
        if (e >= 0) scale = std::max(scale, 1.0 + std::abs(weights[e]));
      } else {
        allowed_[k] = 1;
        cost_[k] = 0.0;
      }
    }
  }
  for (int r : c.rejected) {
    const size_t k = static_cast<size_t>(graph_->candidate_of(r)) * n_ +
                     graph_->position_of(r);
    allowed_[k] = 0;
  }
  for (int a : c.accepted) {
    const int row = graph_->candidate_of(a);
    const int col = graph_->position_of(a);
    for (int k = 0; k < n_; ++k) {
      if (k != col) allowed_[static_cast<size_t>(row) * n_ + k] = 0;
      if (k != row) allowed_[static_cast<size_t>(k) * n_ + col] = 0;
    }
  }
  for (size_t k = 0; k < cost_.size(); ++k) {
    if (!allowed_[k]) cost_[k] = kForbidden;
  }
  if (!Hungarian()) return false;
  for (int col = 0; col < n_; ++col) col_row_[col] = p_[col + 1] - 1;
  if (lexicographic && !LexicographicRepair(kTieTolerance * scale)) {
    return false;
  }
  for (int col = 0; col < l_; ++col) {
    result_[col] = edge_at_[col_row_[col] * l_ + col];
  }
  return true;
}

// Shortest augmenting path Hungarian method, O(n^3). Rows are candidates,
// columns are positions followed by dummies.
bool MatchingOracle::Hungarian() {
  const int n = n_;
  std::fill(u_.begin(), u_.end(), 0.0);
  std::fill(v_.begin(), v_.end(), 0.0);
  std::fill(p_.begin(), p_.end(), 0);
  std::fill(way_.begin(), way_.end(), 0);
  for (int i = 1; i <= n; ++i) {
    p_[0] = i;
    int j0 = 0;
    std::fill(minv_.begin(), minv_.end(), kForbidden);
    std::fill(used_.begin(), used_.end(), 0);
    do {
      used_[j0] = 1;
      const int i0 = p_[j0];
      const double* row = &cost_[static_cast<size_t>(i0 - 1) * n];
      double delta = kForbidden;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used_[j]) continue;
        if (row[j - 1] != kForbidden) {
          const double cur = row[j - 1] - u_[i0] - v_[j];
          if (cur < minv_[j]) {
            minv_[j] = cur;
            way_[j] = j0;
          }
        }
        if (minv_[j] < delta) {
          delta = minv_[j];
          j1 = j;
        }
      }
      if (delta == kForbidden) return false;
      for (int j = 0; j <= n; ++j) {
        if (used_[j]) {
          u_[p_[j]] += delta;
          v_[j] -= delta;
        } else {
          minv_[j] -= delta;
        }
      }
      j0 = j1;
    } while (p_[j0] != 0);
    do {
      const int j1 = way_[j0];
      p_[j0] = p_[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  return true;
}

bool MatchingOracle::LexicographicRepair(double tol) {
  auto tight = [&](int row, int col) {
    const size_t k = static_cast<size_t>(row) * n_ + col;
    return allowed_[k] && cost_[k] - u_[row + 1] - v_[col + 1] <= tol;
  };
  std::fill(row_fixed_.begin(), row_fixed_.end(), 0);
  for (int col = 0; col < l_; ++col) {
    const int ref_row = col_row_[col];
    const int ref_edge = edge_at_[ref_row * l_ + col];
    int chosen_row = -1;
    for (int e : graph_->bucket(col)) {
      const int row = graph_->candidate_of(e);
      if (e == ref_edge) {
        chosen_row = row;
        break;
      }
      if (row_fixed_[row] || !tight(row, col)) continue;
      row_fixed_[row] = 1;
      if (TightFeasible(col + 1, tol)) {
        col_row_[col] = row;
        chosen_row = row;
        break;
      }
      row_fixed_[row] = 0;
    }
    if (chosen_row < 0) return false;
    row_fixed_[chosen_row] = 1;
  }
  return true;
}

// Perfect matching of unfixed rows onto columns [from_column, n) through
// tight entries; on success the assignment replaces col_row_ there.
bool MatchingOracle::TightFeasible(int from_column, double tol) {
  auto tight = [&](int row, int col) {
    const size_t k = static_cast<size_t>(row) * n_ + col;
    return allowed_[k] && cost_[k] - u_[row + 1] - v_[col + 1] <= tol;
  };
  std::fill(kuhn_row_match_.begin(), kuhn_row_match_.end(), -1);
  std::fill(kuhn_col_match_.begin(), kuhn_col_match_.end(), -1);
  auto try_col = [&](auto&& self, int col) -> bool {
    for (int row = 0; row < n_; ++row) {
      if (row_fixed_[row] || kuhn_seen_[row] || !tight(row, col)) continue;
      kuhn_seen_[row] = 1;
      if (kuhn_row_match_[row] < 0 || self(self, kuhn_row_match_[row])) {
        kuhn_row_match_[row] = col;
        kuhn_col_match_[col] = row;
        return true;
      }
    }
    return false;
  };
  for (int col = from_column; col < n_; ++col) {
    std::fill(kuhn_seen_.begin(), kuhn_seen_.end(), 0);
    if (!try_col(try_col, col)) return false;
  }
  for (int col = from_column; col < n_; ++col) {
    col_row_[col] = kuhn_col_match_[col];
  }
  return true;
}

namespace {

void ValidateWeights(const BipartiteGraph& graph,
                     std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != graph.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument,
                "weight vector length does not match edge count");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite edge weight");
    }
  }
}

}  // namespace

Matching Mwmc(const BipartiteGraph& graph, std::span<const double> weights,
              const ConstraintPair& c) {
  ValidateWeights(graph, weights);
  ValidateConstraints(graph, c);
  MatchingOracle oracle(graph);
  std::optional<Matching> m = oracle.Maximize(weights, c);
  if (!m) {
    throw Error(ErrorCode::kInfeasibleConstraints,
                "no maximum matching satisfies the constraints");
  }
  return *std::move(m);
}

Matching MinCostMaximumMatching(const BipartiteGraph& graph,
                                std::span<const double> costs,
                                const ConstraintPair& c) {
  ValidateWeights(graph, costs);
  ValidateConstraints(graph, c);
  MatchingOracle oracle(graph);
  std::optional<Matching> m = oracle.Minimize(costs, c);
  if (!m) {
    throw Error(ErrorCode::kInfeasibleConstraints,
                "no maximum matching satisfies the constraints");
  }
  return *std::move(m);
}

}  // namespace cpedb

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

#ifndef CPEDB_PREFERENCE_H_
#define CPEDB_PREFERENCE_H_

#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "cpedb/bipartite_graph.h"

namespace cpedb {

// Dense m x m matrix over edge pairs. Used for the hidden truth, for the
// confidence-bound matrices, and for any payoff matrix handed to the minimax
// oracle. No structural invariants are enforced.
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  explicit PairwiseMatrix(int m, double fill = 0.0)
      : m_(m), data_(static_cast<size_t>(m) * m, fill) {}
  PairwiseMatrix(int m, std::vector<double> row_major);

  int size() const { return m_; }
  double operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * m_ + j];
  }
  double& operator()(int i, int j) {
    return data_[static_cast<size_t>(i) * m_ + j];
  }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) =
      default;

 private:
  int m_ = 0;
  std::vector<double> data_;
};

// Pairwise win probabilities. Validated on construction: diagonal 1/2,
// p(i,j) + p(j,i) = 1 for comparable pairs, 0 for incomparable pairs, all to
// kTolerance. Out-of-tolerance input is rejected, never repaired.
class PreferenceMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  PreferenceMatrix(const BipartiteGraph& graph, PairwiseMatrix matrix);

  // Builds from (i, j, p_ij) entries with i < j comparable; the diagonal and
  // the complement entries are synthesized.
  static PreferenceMatrix FromUpperEntries(
      const BipartiteGraph& graph,
      const std::vector<std::tuple<int, int, double>>& entries);

  // Every comparable off-diagonal entry equal to 1/2.
  static PreferenceMatrix Symmetric(const BipartiteGraph& graph);

  // p' = 1/2 + factor (p - 1/2) on comparable pairs.
  PreferenceMatrix ScaledTowardHalf(const BipartiteGraph& graph,
                                    double factor) const;

  int size() const { return matrix_.size(); }
  double operator()(int i, int j) const { return matrix_(i, j); }
  const PairwiseMatrix& matrix() const { return matrix_; }

  // (i, j, p_ij) for comparable i < j, row-major.
  std::vector<std::tuple<int, int, double>> UpperEntries(
      const BipartiteGraph& graph) const;

 private:
  explicit PreferenceMatrix(PairwiseMatrix matrix)
      : matrix_(std::move(matrix)) {}
  PairwiseMatrix matrix_;
};

// f(M1, M2, Q) = (1/l) sum_j Q[e(M1,j)][e(M2,j)].
double MatchingPreference(const Matching& m1, const Matching& m2,
                          const PairwiseMatrix& q);
inline double MatchingPreference(const Matching& m1, const Matching& m2,
                                 const PreferenceMatrix& p) {
  return MatchingPreference(m1, m2, p.matrix());
}

// Mean preference of M over the whole decision class (M included).
double BordaScore(const Matching& m, const PreferenceMatrix& p,
                  std::span<const Matching> decision_class);

// w(e): mean of p[e][e(M, s(e))] over the decision class.
double EdgeReward(const BipartiteGraph& graph, int e, const PreferenceMatrix& p,
                  std::span<const Matching> decision_class);
std::vector<double> EdgeRewards(const BipartiteGraph& graph,
                                const PreferenceMatrix& p,
                                std::span<const Matching> decision_class);

inline constexpr double kWinnerTieTolerance = 1e-12;

// Throws kNonUniqueWinner when the best two scores are within 1e-12.
Matching FindBordaWinner(const PreferenceMatrix& p,
                         std::span<const Matching> decision_class);

// The matching beating every other one with probability > 1/2, if any.
std::optional<Matching> FindCondorcetWinner(
    const PreferenceMatrix& p, std::span<const Matching> decision_class);

struct PairGap {
  int e1 = 0;
  int e2 = 0;
  double gap = 0.0;
};

// Ground-truth gap and hardness quantities, computed by exhaustive
// maximization over the decision class. Maximization over an empty set is
// -infinity, so the corresponding gap is +infinity and contributes 0 to the
// hardness sums. Borda or Condorcet parts are absent when the winner is
// missing or not unique.
struct GapReport {
  int num_matchings = 0;
  int width = 0;

  std::optional<Matching> borda_winner;
  std::vector<double> edge_reward;  // w(e)
  std::vector<double> borda_gap;    // per edge
  double borda_gap_min = 0.0;
  double borda_hardness = 0.0;  // H^B

  std::optional<Matching> condorcet_winner;
  std::vector<double> condorcet_gap;       // per edge
  std::vector<PairGap> condorcet_pair_gap; // comparable pairs, e1 < e2
  // Per edge; NaN for edges of the Condorcet winner.
  std::vector<double> verification_gap;
  double verification_hardness = 0.0;  // H^C_ver

  // H^B_eps = sum_e min(width^2 / gap_e^2, 1 / eps^2).
  double BordaHardnessEps(double epsilon) const;
};

GapReport ComputeGaps(const BipartiteGraph& graph, const PreferenceMatrix& p,
                      int edge_cap = kDefaultEnumerationCap);

// Number of positions where the two matchings use different edges.
int PositionDistance(const Matching& a, const Matching& b);

}  // namespace cpedb

#endif  // CPEDB_PREFERENCE_H_

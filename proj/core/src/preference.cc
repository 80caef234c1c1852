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

#include "cpedb/preference.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cpedb/errors.h"
#include "cpedb/matching_oracle.h"

namespace cpedb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string PairName(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

double InverseSquare(double gap) {
  return std::isinf(gap) ? 0.0 : 1.0 / (gap * gap);
}
}  // namespace

PairwiseMatrix::PairwiseMatrix(int m, std::vector<double> row_major)
    : m_(m), data_(std::move(row_major)) {
  if (data_.size() != static_cast<size_t>(m) * m) {
    throw Error(ErrorCode::kInvalidArgument, "matrix data is not m x m");
  }
}

PreferenceMatrix::PreferenceMatrix(const BipartiteGraph& graph,
                                   PairwiseMatrix matrix)
    : matrix_(std::move(matrix)) {
  const int m = graph.num_edges();
  if (matrix_.size() != m) {
    throw Error(ErrorCode::kInvalidPreference,
                "matrix size " + std::to_string(matrix_.size()) +
                    " does not match edge count " + std::to_string(m));
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double p = matrix_(i, j);
      if (!std::isfinite(p) || p < -kTolerance || p > 1.0 + kTolerance) {
        throw Error(ErrorCode::kInvalidPreference,
                    "entry " + PairName(i, j) + " outside [0, 1]");
      }
      if (i == j) {
        if (std::abs(p - 0.5) > kTolerance) {
          throw Error(ErrorCode::kInvalidPreference,
                      "diagonal entry " + std::to_string(i) + " is not 1/2");
        }
      } else if (!graph.Comparable(i, j)) {
        if (std::abs(p) > kTolerance) {
          throw Error(ErrorCode::kInvalidPreference,
                      "incomparable entry " + PairName(i, j) + " is not 0");
        }
      } else if (std::abs(p + matrix_(j, i) - 1.0) > kTolerance) {
        throw Error(ErrorCode::kInvalidPreference,
                    "entries " + PairName(i, j) + " and " + PairName(j, i) +
                        " do not sum to 1");
      }
    }
  }
}

PreferenceMatrix PreferenceMatrix::FromUpperEntries(
    const BipartiteGraph& graph,
    const std::vector<std::tuple<int, int, double>>& entries) {
  const int m = graph.num_edges();
  PairwiseMatrix q(m, 0.0);
  std::vector<uint8_t> seen(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) q(i, i) = 0.5;
  for (const auto& [i, j, p] : entries) {
    if (i < 0 || j < 0 || i >= m || j >= m || i >= j) {
      throw Error(ErrorCode::kInvalidPreference,
                  "entry " + PairName(i, j) + " must satisfy 0 <= i < j < m");
    }
    if (!graph.Comparable(i, j)) {
      throw Error(ErrorCode::kInvalidPreference,
                  "entry " + PairName(i, j) + " joins incomparable edges");
    }
    if (seen[static_cast<size_t>(i) * m + j]) {
      throw Error(ErrorCode::kInvalidPreference,
                  "duplicate entry " + PairName(i, j));
    }
    seen[static_cast<size_t>(i) * m + j] = 1;
    q(i, j) = p;
    q(j, i) = 1.0 - p;
  }
  for (int j = 0; j < graph.num_positions(); ++j) {
    const auto bucket = graph.bucket(j);
    for (size_t a = 0; a < bucket.size(); ++a) {
      for (size_t b = a + 1; b < bucket.size(); ++b) {
        if (!seen[static_cast<size_t>(bucket[a]) * m + bucket[b]]) {
          throw Error(ErrorCode::kInvalidPreference,
                      "missing entry " + PairName(bucket[a], bucket[b]));
        }
      }
    }
  }
  return PreferenceMatrix(graph, std::move(q));
}

PreferenceMatrix PreferenceMatrix::Symmetric(const BipartiteGraph& graph) {
  const int m = graph.num_edges();
  PairwiseMatrix q(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (graph.Comparable(i, j)) q(i, j) = 0.5;
    }
  }
  return PreferenceMatrix(std::move(q));
}

PreferenceMatrix PreferenceMatrix::ScaledTowardHalf(const BipartiteGraph& graph,
                                                    double factor) const {
  PairwiseMatrix q = matrix_;
  const int m = size();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!graph.Comparable(i, j)) continue;
      q(i, j) = 0.5 + factor * (matrix_(i, j) - 0.5);
      q(j, i) = 1.0 - q(i, j);
    }
  }
  return PreferenceMatrix(graph, std::move(q));
}

std::vector<std::tuple<int, int, double>> PreferenceMatrix::UpperEntries(
    const BipartiteGraph& graph) const {
  std::vector<std::tuple<int, int, double>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (graph.Comparable(i, j)) out.emplace_back(i, j, matrix_(i, j));
    }
  }
  return out;
}

double MatchingPreference(const Matching& m1, const Matching& m2,
                          const PairwiseMatrix& q) {
  const int l = m1.size();
  double total = 0.0;
  for (int j = 0; j < l; ++j) total += q(m1.EdgeAt(j), m2.EdgeAt(j));
  return total / l;
}

double BordaScore(const Matching& m, const PreferenceMatrix& p,
                  std::span<const Matching> decision_class) {
  double total = 0.0;
  for (const Matching& other : decision_class) {
    total += MatchingPreference(m, other, p);
  }
  return total / static_cast<double>(decision_class.size());
}

double EdgeReward(const BipartiteGraph& graph, int e, const PreferenceMatrix& p,
                  std::span<const Matching> decision_class) {
  const int j = graph.position_of(e);
  double total = 0.0;
  for (const Matching& m : decision_class) total += p(e, m.EdgeAt(j));
  return total / static_cast<double>(decision_class.size());
}

std::vector<double> EdgeRewards(const BipartiteGraph& graph,
                                const PreferenceMatrix& p,
                                std::span<const Matching> decision_class) {
  std::vector<double> w(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e) {
    w[e] = EdgeReward(graph, e, p, decision_class);
  }
  return w;
}

Matching FindBordaWinner(const PreferenceMatrix& p,
                         std::span<const Matching> decision_class) {
  if (decision_class.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty decision class");
  }
  size_t best = 0;
  double best_score = -kInf;
  double runner_up = -kInf;
  for (size_t i = 0; i < decision_class.size(); ++i) {
    const double s = BordaScore(decision_class[i], p, decision_class);
    if (s > best_score) {
      runner_up = best_score;
      best_score = s;
      best = i;
    } else if (s > runner_up) {
      runner_up = s;
    }
  }
  if (best_score - runner_up <= kWinnerTieTolerance) {
    throw Error(ErrorCode::kNonUniqueWinner,
                "Borda scores tie within tolerance");
  }
  return decision_class[best];
}

std::optional<Matching> FindCondorcetWinner(
    const PreferenceMatrix& p, std::span<const Matching> decision_class) {
  for (const Matching& candidate : decision_class) {
    bool wins_all = true;
    for (const Matching& other : decision_class) {
      if (other == candidate) continue;
      if (!(MatchingPreference(candidate, other, p) > 0.5)) {
        wins_all = false;
        break;
      }
    }
    if (wins_all) return candidate;
  }
  return std::nullopt;
}

int PositionDistance(const Matching& a, const Matching& b) {
  int d = 0;
  for (int j = 0; j < a.size(); ++j) d += a.EdgeAt(j) != b.EdgeAt(j);
  return d;
}

double GapReport::BordaHardnessEps(double epsilon) const {
  double total = 0.0;
  const double w2 = static_cast<double>(width) * width;
  for (double gap : borda_gap) {
    if (std::isinf(gap)) continue;
    total += std::min(w2 / (gap * gap), 1.0 / (epsilon * epsilon));
  }
  return total;
}

GapReport ComputeGaps(const BipartiteGraph& graph, const PreferenceMatrix& p,
                      int edge_cap) {
  const std::vector<Matching> all =
      EnumerateMaximumMatchings(graph, {}, edge_cap);
  const int m = graph.num_edges();
  GapReport report;
  report.num_matchings = static_cast<int>(all.size());
  report.width = Width(graph, edge_cap);
  report.edge_reward = EdgeRewards(graph, p, all);

  try {
    report.borda_winner = FindBordaWinner(p, all);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonUniqueWinner) throw;
  }
  if (report.borda_winner) {
    const Matching& star = *report.borda_winner;
    const double best = TotalWeight(star, report.edge_reward);
    report.borda_gap.assign(m, kInf);
    for (int e = 0; e < m; ++e) {
      double challenger = -kInf;
      for (const Matching& other : all) {
        if (other.Contains(e) != star.Contains(e)) {
          challenger =
              std::max(challenger, TotalWeight(other, report.edge_reward));
        }
      }
      report.borda_gap[e] = best - challenger;
    }
    report.borda_gap_min =
        *std::min_element(report.borda_gap.begin(), report.borda_gap.end());
    for (double gap : report.borda_gap) {
      report.borda_hardness += InverseSquare(gap);
    }
  }

  report.condorcet_winner = FindCondorcetWinner(p, all);
  if (report.condorcet_winner) {
    const Matching& star = *report.condorcet_winner;
    report.condorcet_gap.assign(m, kInf);
    report.verification_gap.assign(m, std::numeric_limits<double>::quiet_NaN());
    for (int e = 0; e < m; ++e) {
      double challenger = -kInf;
      double verification = kInf;
      for (const Matching& other : all) {
        if (other.Contains(e) == star.Contains(e)) continue;
        const double f = MatchingPreference(other, star, p);
        challenger = std::max(challenger, f);
        if (!star.Contains(e)) {
          const double d = PositionDistance(star, other);
          verification =
              std::min(verification, graph.num_positions() / d * (0.5 - f));
        }
      }
      report.condorcet_gap[e] = 0.5 - challenger;
      if (!star.Contains(e)) {
        report.verification_gap[e] = verification;
        report.verification_hardness += InverseSquare(verification);
      }
    }
    for (int j = 0; j < graph.num_positions(); ++j) {
      const auto bucket = graph.bucket(j);
      for (size_t a = 0; a < bucket.size(); ++a) {
        for (size_t b = a + 1; b < bucket.size(); ++b) {
          report.condorcet_pair_gap.push_back(
              {bucket[a], bucket[b],
               std::max(report.condorcet_gap[bucket[a]],
                        report.condorcet_gap[bucket[b]])});
        }
      }
    }
  }
  return report;
}

}  // namespace cpedb

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

#include "cpedb/condorcet_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cpedb/errors.h"

namespace cpedb {
namespace {

void CheckIndices(const BipartiteGraph& graph, const ConstraintPair& c) {
  for (const auto* list : {&c.accepted, &c.rejected}) {
    for (int e : *list) {
      if (e < 0 || e >= graph.num_edges()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "constraint edge out of range: " + std::to_string(e));
      }
    }
  }
}

void CheckPayoff(const BipartiteGraph& graph, const PairwiseMatrix& q) {
  if (q.size() != graph.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "payoff matrix size mismatch");
  }
}

void CheckEps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must be finite and > 0");
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double SumAt(std::span<const double> a, std::span<const int> edges) {
  double s = 0.0;
  for (int e : edges) s += a[e];
  return s;
}

// cost_f = sum_e x_e Q(e, f), restricted to comparable pairs.
void RowTimesMatrix(const BipartiteGraph& graph, std::span<const double> x,
                    const PairwiseMatrix& q, std::vector<double>* out) {
  out->assign(graph.num_edges(), 0.0);
  for (const auto& bucket : graph.position_buckets()) {
    for (int f : bucket) {
      double s = 0.0;
      for (int e : bucket) s += x[e] * q(e, f);
      (*out)[f] = s;
    }
  }
}

// out_e = sum_f Q(e, f) y_f.
void MatrixTimesColumn(const BipartiteGraph& graph, const PairwiseMatrix& q,
                       std::span<const double> y, std::vector<double>* out) {
  out->assign(graph.num_edges(), 0.0);
  for (const auto& bucket : graph.position_buckets()) {
    for (int e : bucket) {
      double s = 0.0;
      for (int f : bucket) s += q(e, f) * y[f];
      (*out)[e] = s;
    }
  }
}

// Frank-Wolfe state over an explicit active set.
class ActiveSet {
 public:
  explicit ActiveSet(int m) : x_(m, 0.0) {}

  void Reset(std::vector<std::vector<int>> vertices,
             std::vector<double> weights) {
    vertices_ = std::move(vertices);
    weights_ = std::move(weights);
    Recompute();
  }

  void Recompute() {
    std::fill(x_.begin(), x_.end(), 0.0);
    double total = 0.0;
    for (double w : weights_) total += w;
    for (size_t i = 0; i < vertices_.size(); ++i) {
      weights_[i] /= total;
      for (int e : vertices_[i]) x_[e] += weights_[i];
    }
  }

  int Find(std::span<const int> v) const {
    for (size_t i = 0; i < vertices_.size(); ++i) {
      if (std::equal(v.begin(), v.end(), vertices_[i].begin(),
                     vertices_[i].end())) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  // x <- (1 - gamma) x + gamma s.
  void TowardVertex(std::span<const int> s, double gamma) {
    int idx = Find(s);
    if (idx < 0) {
      vertices_.emplace_back(s.begin(), s.end());
      weights_.push_back(0.0);
      idx = static_cast<int>(vertices_.size()) - 1;
    }
    for (double& w : weights_) w *= 1.0 - gamma;
    weights_[idx] += gamma;
    for (double& v : x_) v *= 1.0 - gamma;
    for (int e : s) x_[e] += gamma;
    if (gamma >= 1.0) {
      vertices_ = {vertices_[idx]};
      weights_ = {1.0};
      Recompute();
    }
  }

  // x <- (1 + gamma) x - gamma v_a; drops a at the maximal step.
  void AwayFromVertex(int a, double gamma, bool drop) {
    for (double& w : weights_) w *= 1.0 + gamma;
    weights_[a] -= gamma;
    for (double& v : x_) v *= 1.0 + gamma;
    for (int e : vertices_[a]) x_[e] -= gamma;
    if (drop) {
      vertices_.erase(vertices_.begin() + a);
      weights_.erase(weights_.begin() + a);
      Recompute();
    }
  }

  void Compact() {
    size_t k = 0;
    for (size_t i = 0; i < vertices_.size(); ++i) {
      if (weights_[i] >= 1e-12) {
        if (k != i) vertices_[k] = std::move(vertices_[i]);
        weights_[k] = weights_[i];
        ++k;
      }
    }
    vertices_.resize(k);
    weights_.resize(k);
    Recompute();
  }

  const std::vector<double>& x() const { return x_; }
  const std::vector<std::vector<int>>& vertices() const { return vertices_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<std::vector<int>> vertices_;
  std::vector<double> weights_;
  std::vector<double> x_;
};

PolytopePoint ToPoint(const BipartiteGraph& graph, const ActiveSet& set) {
  std::vector<Matching> vertices;
  vertices.reserve(set.vertices().size());
  for (const auto& v : set.vertices()) vertices.emplace_back(graph, v);
  return PolytopePoint(graph, std::move(vertices), set.weights());
}

ProjectionResult RunFrankWolfe(const BipartiteGraph& graph,
                               MatchingOracle& oracle,
                               std::span<const double> p,
                               const ConstraintPair& c, double eps,
                               ProjectionVariant variant,
                               const PolytopePoint& start) {
  const int m = graph.num_edges();
  const double l = graph.num_positions();
  ActiveSet set(m);
  if (!start.empty()) {
    std::vector<std::vector<int>> vertices;
    for (const auto& v : start.vertices()) vertices.push_back(v.edge_ids());
    set.Reset(std::move(vertices), start.weights());
  } else {
    std::vector<double> zeros(m, 0.0);
    std::span<const int> first = oracle.MaximizeEdges(zeros, c);
    if (first.empty()) {
      throw Error(ErrorCode::kInfeasibleConstraints,
                  "projection onto an empty polytope");
    }
    set.Reset({std::vector<int>(first.begin(), first.end())}, {1.0});
  }

  const double cap_d = std::ceil(16.0 * l * l / (eps * eps));
  const int64_t cap = cap_d > 1e15 ? int64_t{1'000'000'000'000'000}
                                   : static_cast<int64_t>(cap_d);
  std::vector<double> grad(m);
  ProjectionResult result;
  for (int64_t t = 1; t <= cap; ++t) {
    const std::vector<double>& x = set.x();
    for (int e = 0; e < m; ++e) grad[e] = x[e] - p[e];
    std::span<const int> s = oracle.MinimizeEdges(grad, c);
    const double gx = Dot(grad, x);
    const double fw_gap = gx - SumAt(grad, s);
    result.fw_gap = fw_gap;
    result.iterations = t - 1;
    // f(x) - f* <= gap and f is 1-strongly convex.
    if (2.0 * fw_gap <= eps * eps) {
      result.certified = true;
      break;
    }
    if (variant == ProjectionVariant::kStandard) {
      set.TowardVertex(s, 2.0 / (static_cast<double>(t) + 1.0));
      continue;
    }
    int away = 0;
    double away_value = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < set.vertices().size(); ++i) {
      double v = SumAt(grad, set.vertices()[i]);
      if (v > away_value) {
        away_value = v;
        away = static_cast<int>(i);
      }
    }
    const double away_gap = away_value - gx;
    if (fw_gap >= away_gap || set.vertices().size() == 1) {
      // d = s - x; ||d||^2 = l - 2 <x, s> + ||x||^2.
      double d2 = l - 2.0 * SumAt(x, s) + Dot(x, x);
      double gamma = d2 > 0.0 ? std::min(1.0, fw_gap / d2) : 1.0;
      std::vector<int> s_copy(s.begin(), s.end());
      set.TowardVertex(s_copy, gamma);
    } else {
      const double alpha = set.weights()[away];
      const double gamma_max = alpha / (1.0 - alpha);
      const auto& va = set.vertices()[away];
      double d2 = Dot(x, x) - 2.0 * SumAt(x, va) + l;
      double gamma = d2 > 0.0 ? away_gap / d2 : gamma_max;
      bool drop = gamma >= gamma_max;
      set.AwayFromVertex(away, drop ? gamma_max : gamma, drop);
    }
    if ((t & 63) == 0) set.Compact();
  }
  set.Compact();
  result.point = ToPoint(graph, set);
  return result;
}

}  // namespace

PolytopePoint::PolytopePoint(const BipartiteGraph& graph,
                             std::vector<Matching> vertices,
                             std::vector<double> weights)
    : vertices_(std::move(vertices)),
      weights_(std::move(weights)),
      dense_(graph.num_edges(), 0.0) {
  if (vertices_.size() != weights_.size() || vertices_.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "polytope point needs one weight per vertex");
  }
  for (size_t i = 0; i < vertices_.size(); ++i) {
    for (int e : vertices_[i].edge_ids()) dense_[e] += weights_[i];
  }
}

PolytopePoint PolytopePoint::Vertex(const BipartiteGraph& graph, Matching m) {
  return PolytopePoint(graph, {std::move(m)}, {1.0});
}

std::string PolytopePoint::Check(const BipartiteGraph& graph,
                                 const ConstraintPair& c, double tol) const {
  if (empty()) return "empty point";
  if (static_cast<int>(dense_.size()) != graph.num_edges()) {
    return "dense vector has wrong size";
  }
  double total = 0.0;
  std::vector<double> rebuilt(graph.num_edges(), 0.0);
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (!(weights_[i] > 0.0)) return "non-positive weight";
    if (!Satisfies(vertices_[i], c)) return "vertex violates constraints";
    total += weights_[i];
    for (int e : vertices_[i].edge_ids()) rebuilt[e] += weights_[i];
  }
  if (std::abs(total - 1.0) > tol) return "weights do not sum to 1";
  double mass = 0.0;
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (std::abs(rebuilt[e] - dense_[e]) > tol) return "dense mismatch";
    if (dense_[e] < -tol || dense_[e] > 1.0 + tol) return "entry outside [0,1]";
    mass += dense_[e];
  }
  if (std::abs(mass - graph.num_positions()) > tol * graph.num_edges()) {
    return "coordinates do not sum to l";
  }
  return {};
}

InnerMinResult InnerMin(const BipartiteGraph& graph, std::span<const double> x,
                        const PairwiseMatrix& q, const ConstraintPair& c2) {
  CheckPayoff(graph, q);
  CheckIndices(graph, c2);
  if (static_cast<int>(x.size()) != graph.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "point size mismatch");
  }
  std::vector<double> costs;
  RowTimesMatrix(graph, x, q, &costs);
  MatchingOracle oracle(graph);
  std::span<const int> y = oracle.MinimizeEdges(costs, c2);
  if (y.empty()) {
    throw Error(ErrorCode::kInfeasibleConstraints, "min side is infeasible");
  }
  InnerMinResult result;
  result.value = SumAt(costs, y) / graph.num_positions();
  result.minimizer = Matching(graph, std::vector<int>(y.begin(), y.end()));
  return result;
}

ProjectionResult ApproxProject(const BipartiteGraph& graph,
                               std::span<const double> p,
                               const ConstraintPair& c, double eps,
                               ProjectionVariant variant,
                               const PolytopePoint& start) {
  CheckEps(eps);
  CheckIndices(graph, c);
  if (static_cast<int>(p.size()) != graph.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "point size mismatch");
  }
  MatchingOracle oracle(graph);
  return RunFrankWolfe(graph, oracle, p, c, eps, variant, start);
}

MinimaxOracle::MinimaxOracle(const BipartiteGraph& graph,
                             OracleOptions options)
    : graph_(&graph), options_(options), oracle_(graph) {
  if (options_.iteration_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "iteration cap must be >= 1");
  }
}

int64_t MinimaxOracle::Horizon(double eps) const {
  CheckEps(eps);
  const double l = graph_->num_positions();
  const double k = std::max<double>(1.0, graph_->num_duels());
  const double t = std::ceil((4.0 * l * k) * (4.0 * l * k) / (eps * eps));
  return t > 4e18 ? std::numeric_limits<int64_t>::max()
                  : static_cast<int64_t>(t);
}

double MinimaxOracle::MinResponse(std::span<const double> x,
                                  const PairwiseMatrix& q,
                                  const ConstraintPair& c2,
                                  std::vector<int>* response) {
  RowTimesMatrix(*graph_, x, q, &costs_);
  std::span<const int> y = oracle_.MinimizeEdges(costs_, c2);
  if (y.empty()) {
    throw Error(ErrorCode::kInfeasibleMinSide, "min side is infeasible");
  }
  response->assign(y.begin(), y.end());
  return SumAt(costs_, y) / graph_->num_positions();
}

OracleResult MinimaxOracle::Solve(const ConstraintPair& c1,
                                  const ConstraintPair& c2,
                                  const PairwiseMatrix& q, double eps,
                                  OracleWarmStart* warm) {
  CheckEps(eps);
  CheckPayoff(*graph_, q);
  CheckIndices(*graph_, c1);
  CheckIndices(*graph_, c2);
  const int m = graph_->num_edges();
  const double l = graph_->num_positions();

  std::vector<double> zeros(m, 0.0);
  if (oracle_.MinimizeEdges(zeros, c2).empty()) {
    throw Error(ErrorCode::kInfeasibleMinSide, "min side is infeasible");
  }
  OracleResult result;
  std::span<const int> first = oracle_.MaximizeEdges(zeros, c1);
  if (first.empty()) return result;

  PolytopePoint x;
  if (warm != nullptr && !warm->x.empty() && warm->x.Check(*graph_, c1).empty())
    x = warm->x;
  else
    x = PolytopePoint::Vertex(
        *graph_,
        Matching(*graph_, std::vector<int>(first.begin(), first.end())));

  const int64_t horizon = Horizon(eps);
  const int64_t t_eff = std::min(horizon, options_.iteration_cap);
  if (!options_.certificate && horizon > options_.iteration_cap) {
    throw Error(ErrorCode::kOracleBudgetExceeded,
                "horizon " + std::to_string(horizon) + " exceeds cap " +
                    std::to_string(options_.iteration_cap) +
                    "; use a larger eps");
  }
  const double k = std::max<double>(1.0, graph_->num_duels());

  y_bar_.assign(m, 0.0);
  double y_weight = 0.0;
  if (warm != nullptr && static_cast<int>(warm->y_bar.size()) == m) {
    // The previous average counts as one sample when it still lies in P(c2).
    bool ok = true;
    for (int e : c2.rejected) ok = ok && warm->y_bar[e] <= 1e-12;
    for (int e : c2.accepted) ok = ok && warm->y_bar[e] >= 1.0 - 1e-12;
    if (ok) {
      y_bar_ = warm->y_bar;
      y_weight = 1.0;
    }
  }

  double best = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  PolytopePoint best_point;
  // With the certificate, horizons grow 16, 64, ... up to t_eff, each stage
  // a full run of the schedule restarted from the best point so far.
  int64_t stage = options_.certificate ? std::min<int64_t>(16, t_eff) : t_eff;
  while (true) {
    const double root_t = std::sqrt(static_cast<double>(stage));
    const double eta = 2.0 * l / (k * root_t);
    const double eps_proj = eps / (2.0 * k * root_t);
    if (!best_point.empty()) x = best_point;
    for (int64_t t = 1; t <= stage; ++t) {
      const double value = MinResponse(x.dense(), q, c2, &response_);
      ++result.iterations;
      if (options_.observer) options_.observer(result.iterations, x, value);
      if (value > best) {
        best = value;
        best_point = x;
      }
      if (options_.certificate) {
        // Restart the average at powers of two to shed the early transient.
        if ((t & (t - 1)) == 0 && t > 1) y_weight = 0.0;
        for (double& v : y_bar_) v *= y_weight / (y_weight + 1.0);
        for (int e : response_) y_bar_[e] += 1.0 / (y_weight + 1.0);
        y_weight += 1.0;
        MatrixTimesColumn(*graph_, q, y_bar_, &step_);
        std::span<const int> br = oracle_.MaximizeEdges(step_, c1);
        upper = std::min(upper, SumAt(step_, br) / l);
        if (upper - best <= eps) {
          result.certified = true;
          break;
        }
      }
      if (t == stage) break;
      // Ascent step along (1/l) Q chi(y_t).
      step_.assign(x.dense().begin(), x.dense().end());
      for (int e = 0; e < m; ++e) {
        int f = response_[graph_->position_of(e)];
        step_[e] += eta * q(e, f) / l;
      }
      ProjectionResult proj = RunFrankWolfe(*graph_, oracle_, step_, c1,
                                            eps_proj, options_.projection, x);
      ++result.projection_calls;
      x = std::move(proj.point);
    }
    if (result.certified || stage == t_eff) break;
    stage = std::min(stage * 4, t_eff);
    y_weight = 0.0;
  }
  if (!result.certified && horizon > t_eff) {
    throw Error(ErrorCode::kOracleBudgetExceeded,
                "no certificate within " + std::to_string(t_eff) +
                    " iterations (horizon " + std::to_string(horizon) +
                    "); use a larger eps or cap");
  }
  result.value = best;
  result.point = std::move(best_point);
  result.upper_bound = upper;
  if (warm != nullptr) {
    warm->x = result.point;
    warm->y_bar = y_bar_;
  }
  return result;
}

OracleResult SolveMinimax(const BipartiteGraph& graph,
                          const ConstraintPair& c1, const ConstraintPair& c2,
                          const PairwiseMatrix& q, double eps,
                          OracleOptions options) {
  MinimaxOracle oracle(graph, options);
  return oracle.Solve(c1, c2, q, eps);
}

double MatrixGameValue(std::span<const double> a, int rows, int cols) {
  if (rows < 1 || cols < 1 ||
      static_cast<size_t>(rows) * cols != a.size()) {
    throw Error(ErrorCode::kInvalidArgument, "bad game matrix shape");
  }
  // Shift payoffs positive, then max sum z s.t. A' z <= 1, z >= 0; the
  // shifted value is 1 / sum z.
  double lo = *std::min_element(a.begin(), a.end());
  const double shift = 1.0 - lo;
  // Tableau rows: constraints (rows), last row objective. Columns: z (cols),
  // slacks (rows), rhs.
  const int width = cols + rows + 1;
  std::vector<double> tab(static_cast<size_t>(rows + 1) * width, 0.0);
  auto at = [&](int r, int c) -> double& {
    return tab[static_cast<size_t>(r) * width + c];
  };
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      at(r, c) = a[static_cast<size_t>(r) * cols + c] + shift;
    }
    at(r, cols + r) = 1.0;
    at(r, width - 1) = 1.0;
    basis[r] = cols + r;
  }
  for (int c = 0; c < cols; ++c) at(rows, c) = -1.0;
  constexpr double kEps = 1e-12;
  for (int iter = 0; iter < 100000; ++iter) {
    // Bland: lowest index with negative reduced cost enters.
    int enter = -1;
    for (int c = 0; c < width - 1; ++c) {
      if (at(rows, c) < -kEps) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (at(r, enter) > kEps) {
        double ratio = at(r, width - 1) / at(r, enter);
        if (ratio < best_ratio - kEps ||
            (ratio <= best_ratio + kEps && leave >= 0 &&
             basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) {
      throw Error(ErrorCode::kInvalidArgument, "unbounded game LP");
    }
    const double pivot = at(leave, enter);
    for (int c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (int r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }
  const double total = at(rows, width - 1);
  return 1.0 / total - shift;
}

double ExactGameValue(const BipartiteGraph& graph, const ConstraintPair& c1,
                      const ConstraintPair& c2, const PairwiseMatrix& q,
                      int edge_cap) {
  CheckPayoff(graph, q);
  std::vector<Matching> xs = EnumerateMaximumMatchings(graph, c1, edge_cap);
  std::vector<Matching> ys = EnumerateMaximumMatchings(graph, c2, edge_cap);
  const int rows = static_cast<int>(xs.size());
  const int cols = static_cast<int>(ys.size());
  std::vector<double> a(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      a[static_cast<size_t>(i) * cols + j] =
          MatchingPreference(xs[i], ys[j], q);
    }
  }
  return MatrixGameValue(a, rows, cols);
}

}  // namespace cpedb

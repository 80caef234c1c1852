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

#include "testing/references.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpedb/errors.h"

namespace cpedb::testing {

double Distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> ExactProjection(const std::vector<Matching>& vertices,
                                    std::span<const double> p) {
  const int n = static_cast<int>(vertices.size());
  const int m = static_cast<int>(p.size());
  Eigen::MatrixXd v(m, n);
  for (int j = 0; j < n; ++j) {
    for (int e = 0; e < m; ++e) v(e, j) = vertices[j].Contains(e) ? 1.0 : 0.0;
  }
  Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(p.data(), m);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1) cols.push_back(j);
    }
    const int k = static_cast<int>(cols.size());
    Eigen::MatrixXd vs(m, k);
    for (int i = 0; i < k; ++i) vs.col(i) = v.col(cols[i]);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = vs.transpose() * vs;
    kkt.topRightCorner(k, 1).setOnes();
    kkt.bottomLeftCorner(1, k).setOnes();
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = vs.transpose() * target;
    rhs(k) = 1.0;
    Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    if ((kkt * sol - rhs).norm() > 1e-8) continue;
    Eigen::VectorXd lambda = sol.head(k);
    if (lambda.minCoeff() < -1e-10) continue;
    Eigen::VectorXd x = vs * lambda;
    double d = (x - target).norm();
    if (d < best) {
      best = d;
      best_x = x;
    }
  }
  return std::vector<double>(best_x.data(), best_x.data() + m);
}

std::pair<double, double> MultiplicativeWeightsBounds(
    const std::vector<double>& a, int rows, int cols, int iterations) {
  std::vector<double> lr(rows, 0.0), lc(cols, 0.0);
  std::vector<double> xbar(rows, 0.0), ybar(cols, 0.0);
  const double eta = std::sqrt(8.0 * std::log(std::max(rows, cols) + 1.0) /
                               iterations);
  std::vector<double> x(rows), y(cols);
  for (int t = 0; t < iterations; ++t) {
    auto normalize = [](const std::vector<double>& logits, double sign,
                        std::vector<double>* out) {
      double mx = -std::numeric_limits<double>::infinity();
      for (double v : logits) mx = std::max(mx, sign * v);
      double z = 0.0;
      for (size_t i = 0; i < logits.size(); ++i) {
        (*out)[i] = std::exp(sign * logits[i] - mx);
        z += (*out)[i];
      }
      for (double& v : *out) v /= z;
    };
    normalize(lr, eta, &x);
    normalize(lc, -eta, &y);
    for (int i = 0; i < rows; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols; ++j) s += a[i * cols + j] * y[j];
      lr[i] += s;
      xbar[i] += x[i] / iterations;
    }
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows; ++i) s += a[i * cols + j] * x[i];
      lc[j] += s;
      ybar[j] += y[j] / iterations;
    }
  }
  double lower = std::numeric_limits<double>::infinity();
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += a[i * cols + j] * xbar[i];
    lower = std::min(lower, s);
  }
  double upper = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols; ++j) s += a[i * cols + j] * ybar[j];
    upper = std::max(upper, s);
  }
  return {lower, upper};
}

std::vector<double> RandomHullPoint(const std::vector<Matching>& all, int m,
                                    std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> x(m, 0.0);
  std::vector<double> w(all.size());
  double total = 0.0;
  for (double& v : w) total += (v = ex(rng));
  for (size_t i = 0; i < all.size(); ++i) {
    for (int e : all[i].edge_ids()) x[e] += w[i] / total;
  }
  return x;
}

ConstraintPair RandomConstraints(const BipartiteGraph& g,
                                 std::mt19937_64& rng) {
  ConstraintPair c;
  std::uniform_int_distribution<int> edge(0, g.num_edges() - 1);
  std::uniform_int_distribution<int> coin(0, 3);
  if (coin(rng) == 0) c.accepted.push_back(edge(rng));
  if (coin(rng) <= 1) {
    int e = edge(rng);
    if (std::find(c.accepted.begin(), c.accepted.end(), e) ==
        c.accepted.end()) {
      c.rejected.push_back(e);
    }
  }
  return c;
}

bool Feasible(const BipartiteGraph& g, const ConstraintPair& c) {
  try {
    EnumerateMaximumMatchings(g, c);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasibleConstraints) throw;
    return false;
  }
}

}  // namespace cpedb::testing

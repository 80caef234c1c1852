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

#include "cpedb/duel_env.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "cpedb/errors.h"

namespace cpedb {

std::string TruthHash(const PreferenceMatrix& truth) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : truth.matrix().data()) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

DuelEnvironment::DuelEnvironment(const BipartiteGraph& graph,
                                 PreferenceMatrix truth, uint64_t seed,
                                 int64_t sample_cap)
    : graph_(&graph),
      truth_(std::move(truth)),
      m_(graph.num_edges()),
      rng_(seed),
      sample_cap_(sample_cap),
      pair_samples_(static_cast<size_t>(m_) * m_, 0) {
  if (truth_.size() != m_) {
    throw Error(ErrorCode::kInvalidPreference,
                "preference matrix size does not match the edge count");
  }
  if (sample_cap <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample cap must be positive");
  }
  metadata_ = {seed, "std::mt19937_64", TruthHash(truth_)};
}

bool DuelEnvironment::SampleDuel(int e, int f) {
  if (e < 0 || f < 0 || e >= m_ || f >= m_ || e == f) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid duel (" + std::to_string(e) + ", " +
                    std::to_string(f) + ")");
  }
  if (!graph_->Comparable(e, f)) {
    throw Error(ErrorCode::kIncomparablePair,
                "edges " + std::to_string(e) + " and " + std::to_string(f) +
                    " are on different positions");
  }
  if (exhausted()) {
    throw Error(ErrorCode::kBudgetExceeded,
                "sample cap " + std::to_string(sample_cap_) + " reached");
  }
  ++total_samples_;
  ++pair_samples_[static_cast<size_t>(e) * m_ + f];
  ++pair_samples_[static_cast<size_t>(f) * m_ + e];
  return BernoulliDraw(rng_, truth_(e, f));
}

double ConfidenceLog(int64_t t, double delta, int64_t num_duels) {
  const double td = static_cast<double>(t);
  const double k = static_cast<double>(std::max<int64_t>(num_duels, 1));
  return std::log(4.0 * k * td * td * td / delta);
}

double ConfidenceRadius(int64_t samples, int64_t t, double delta,
                        int64_t num_duels) {
  if (samples <= 0) return 1.0;
  return RadiusFromLog(ConfidenceLog(t, delta, num_duels), samples);
}

void PairStats::Record(int e, int f, bool e_won) {
  ++count_[Index(e, f)];
  ++count_[Index(f, e)];
  ++wins_[e_won ? Index(e, f) : Index(f, e)];
  ++total_;
}

double PairRadius(const PairStats& stats, int e, int f, int64_t t,
                  double delta, int64_t num_duels) {
  return ConfidenceRadius(stats.count(e, f), t, delta, num_duels);
}

double EdgeRadius(const EdgeStats& stats, int e, int64_t t, double delta,
                  int64_t num_duels) {
  return ConfidenceRadius(stats.count(e), t, delta, num_duels);
}

void ComputeBounds(const BipartiteGraph& graph, const PairStats& stats,
                   int64_t t, double delta, BoundMatrices* out) {
  const int m = graph.num_edges();
  if (out->upper.size() != m) {
    out->upper = PairwiseMatrix(m);
    out->lower = PairwiseMatrix(m);
  }
  const double log_term = ConfidenceLog(t, delta, graph.num_duels());
  for (int j = 0; j < graph.num_positions(); ++j) {
    const auto bucket = graph.bucket(j);
    for (int e : bucket) {
      for (int f : bucket) {
        if (e == f) {
          out->upper(e, e) = out->lower(e, e) = 0.5;
          continue;
        }
        const double c = RadiusFromLog(log_term, stats.count(e, f));
        const double p = stats.mean(e, f);
        out->upper(e, f) = std::min(1.0, p + c);
        out->lower(e, f) = std::max(0.0, p - c);
      }
    }
  }
}

BoundMatrices ComputeBounds(const BipartiteGraph& graph, const PairStats& stats,
                            int64_t t, double delta) {
  BoundMatrices out;
  ComputeBounds(graph, stats, t, delta, &out);
  return out;
}

bool BoundsCover(const BipartiteGraph& graph, const PreferenceMatrix& truth,
                 const BoundMatrices& bounds) {
  for (int j = 0; j < graph.num_positions(); ++j) {
    const auto bucket = graph.bucket(j);
    for (int e : bucket) {
      for (int f : bucket) {
        if (e == f) continue;
        if (truth(e, f) > bounds.upper(e, f) ||
            truth(e, f) < bounds.lower(e, f)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace cpedb

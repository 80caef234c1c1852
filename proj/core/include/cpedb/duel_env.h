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

#ifndef CPEDB_DUEL_ENV_H_
#define CPEDB_DUEL_ENV_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cpedb/bipartite_graph.h"
#include "cpedb/preference.h"

namespace cpedb {

inline constexpr int64_t kDefaultSampleCap = 100'000'000;

struct EnvironmentMetadata {
  uint64_t seed = 0;
  std::string generator;
  std::string truth_hash;  // FNV-1a of the matrix bytes, 16 hex digits
};

// FNV-1a 64 over the row-major IEEE-754 entries.
std::string TruthHash(const PreferenceMatrix& truth);

// Simulated duels against a hidden preference matrix. Outcomes come from one
// mt19937_64 stream: X = 1 iff (draw >> 11) * 2^-53 < p.
class DuelEnvironment {
 public:
  DuelEnvironment(const BipartiteGraph& graph, PreferenceMatrix truth,
                  uint64_t seed, int64_t sample_cap = kDefaultSampleCap);

  // True when e beats f. Throws kIncomparablePair for different positions,
  // kInvalidArgument for e == f, kBudgetExceeded once the cap is reached.
  bool SampleDuel(int e, int f);

  int64_t total_samples() const { return total_samples_; }
  // Unordered pair count.
  int64_t pair_samples(int e, int f) const {
    return pair_samples_[static_cast<size_t>(e) * m_ + f];
  }
  int64_t sample_cap() const { return sample_cap_; }
  bool exhausted() const { return total_samples_ >= sample_cap_; }

  const BipartiteGraph& graph() const { return *graph_; }
  // For post-hoc evaluation only; algorithms never read it.
  const PreferenceMatrix& truth() const { return truth_; }
  const EnvironmentMetadata& metadata() const { return metadata_; }

 private:
  const BipartiteGraph* graph_;
  PreferenceMatrix truth_;
  int m_;
  std::mt19937_64 rng_;
  int64_t sample_cap_;
  int64_t total_samples_ = 0;
  std::vector<int64_t> pair_samples_;
  EnvironmentMetadata metadata_;
};

// Bernoulli(p) draw with the environment's mapping.
inline bool BernoulliDraw(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

// sqrt(ln(4 K t^3 / delta) / (2 samples)), and 1 when samples == 0.
double ConfidenceRadius(int64_t samples, int64_t t, double delta,
                        int64_t num_duels);
// The numerator ln(4 K t^3 / delta), shared by every radius of a round.
double ConfidenceLog(int64_t t, double delta, int64_t num_duels);
inline double RadiusFromLog(double log_term, int64_t samples) {
  if (samples <= 0) return 1.0;
  return std::sqrt(log_term / (2.0 * static_cast<double>(samples)));
}

// Win counts for comparable pairs.
class PairStats {
 public:
  PairStats() = default;
  explicit PairStats(int num_edges)
      : m_(num_edges),
        count_(static_cast<size_t>(num_edges) * num_edges, 0),
        wins_(static_cast<size_t>(num_edges) * num_edges, 0) {}

  void Record(int e, int f, bool e_won);

  int num_edges() const { return m_; }
  int64_t count(int e, int f) const { return count_[Index(e, f)]; }
  int64_t wins(int e, int f) const { return wins_[Index(e, f)]; }
  // Empirical win rate of e over f; 1/2 before any sample.
  double mean(int e, int f) const {
    const int64_t n = count(e, f);
    return n == 0 ? 0.5 : static_cast<double>(wins(e, f)) / n;
  }
  int64_t total() const { return total_; }

 private:
  size_t Index(int e, int f) const { return static_cast<size_t>(e) * m_ + f; }
  int m_ = 0;
  std::vector<int64_t> count_;
  std::vector<int64_t> wins_;
  int64_t total_ = 0;
};

// Per-edge running means of duel outcomes.
class EdgeStats {
 public:
  EdgeStats() = default;
  explicit EdgeStats(int num_edges)
      : count_(num_edges, 0), mean_(num_edges, 0) {}

  void Record(int e, bool won) {
    mean_[e] = (mean_[e] * count_[e] + (won ? 1.0 : 0.0)) / (count_[e] + 1);
    ++count_[e];
  }
  // Overwrites the running mean without touching the count.
  void SetMean(int e, double value) { mean_[e] = value; }
  void Reset() {
    std::fill(count_.begin(), count_.end(), 0);
    std::fill(mean_.begin(), mean_.end(), 0.0);
  }

  int64_t count(int e) const { return count_[e]; }
  double mean(int e) const { return mean_[e]; }
  const std::vector<double>& means() const { return mean_; }

 private:
  std::vector<int64_t> count_;
  std::vector<double> mean_;
};

double PairRadius(const PairStats& stats, int e, int f, int64_t t,
                  double delta, int64_t num_duels);
double EdgeRadius(const EdgeStats& stats, int e, int64_t t, double delta,
                  int64_t num_duels);

struct BoundMatrices {
  PairwiseMatrix upper;
  PairwiseMatrix lower;
};

// Clamped upper and lower confidence matrices at round t. Diagonal 1/2,
// incomparable entries 0. Writes into *out, reusing its storage.
void ComputeBounds(const BipartiteGraph& graph, const PairStats& stats,
                   int64_t t, double delta, BoundMatrices* out);
BoundMatrices ComputeBounds(const BipartiteGraph& graph, const PairStats& stats,
                            int64_t t, double delta);

// True when lower <= truth <= upper on every comparable pair.
bool BoundsCover(const BipartiteGraph& graph, const PreferenceMatrix& truth,
                 const BoundMatrices& bounds);

}  // namespace cpedb

#endif  // CPEDB_DUEL_ENV_H_

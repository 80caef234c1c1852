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

#include "cpedb/condorcet_explore.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cpedb/errors.h"
#include "json.hpp"

namespace cpedb {
namespace {

using Json = nlohmann::json;

enum QueryKind { kInUpper = 0, kInLower = 1, kExUpper = 2, kExLower = 3 };

void CheckDelta(double delta, double below, const char* what) {
  if (!(delta > 0.0 && delta < below)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must lie in (0, " +
                    std::to_string(below) + ")");
  }
}

Json StatsToJson(const PairStats& stats, const BipartiteGraph& graph) {
  Json pairs = Json::array();
  for (const auto& bucket : graph.position_buckets()) {
    for (size_t i = 0; i < bucket.size(); ++i) {
      for (size_t j = i + 1; j < bucket.size(); ++j) {
        const int e = bucket[i], f = bucket[j];
        if (stats.count(e, f) > 0) {
          pairs.push_back({e, f, stats.count(e, f), stats.wins(e, f)});
        }
      }
    }
  }
  return pairs;
}

// Replays counts through Record so both orientations stay consistent.
PairStats StatsFromJson(const Json& pairs, int m) {
  PairStats stats(m);
  for (const Json& p : pairs) {
    const int e = p[0], f = p[1];
    const int64_t n = p[2], w = p[3];
    for (int64_t i = 0; i < n; ++i) stats.Record(e, f, i < w);
  }
  return stats;
}

Json PointToJson(const PolytopePoint& point) {
  Json vertices = Json::array();
  for (const Matching& v : point.vertices()) vertices.push_back(v.edge_ids());
  return {{"vertices", vertices}, {"weights", point.weights()}};
}

PolytopePoint PointFromJson(const BipartiteGraph& graph, const Json& j) {
  if (j["vertices"].empty()) return {};
  std::vector<Matching> vertices;
  for (const Json& v : j["vertices"]) {
    vertices.emplace_back(graph, v.get<std::vector<int>>());
  }
  return PolytopePoint(graph, std::move(vertices),
                       j["weights"].get<std::vector<double>>());
}

Json ParseState(std::string_view data) {
  try {
    return Json::parse(data);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace

std::string_view CarStatusName(CarStatus status) {
  switch (status) {
    case CarStatus::kRunning:
      return "running";
    case CarStatus::kIdentified:
      return "identified";
    case CarStatus::kVerificationError:
      return "verification-error";
    case CarStatus::kBudgetExceeded:
      return "budget-exceeded";
    case CarStatus::kInconsistent:
      return "inconsistent";
    case CarStatus::kOracleBudgetExceeded:
      return "oracle-budget-exceeded";
  }
  return "unknown";
}

std::optional<SecondBest> SecondBestResponse(MatchingOracle& oracle,
                                             const Matching& mhat,
                                             const PairwiseMatrix& q) {
  const BipartiteGraph& graph = oracle.graph();
  const int m = graph.num_edges();
  if (q.size() != m || mhat.size() != graph.num_positions()) {
    throw Error(ErrorCode::kInvalidArgument, "size mismatch");
  }
  std::vector<double> weights(m);
  for (int e = 0; e < m; ++e) {
    weights[e] = q(e, mhat.EdgeAt(graph.position_of(e)));
  }
  const double l = graph.num_positions();
  std::optional<SecondBest> best;
  ConstraintPair c;
  c.rejected.resize(1);
  for (int j = 0; j < graph.num_positions(); ++j) {
    c.rejected[0] = mhat.EdgeAt(j);
    std::span<const int> edges = oracle.MaximizeEdges(weights, c);
    if (edges.empty()) continue;
    double value = 0.0;
    for (int e : edges) value += weights[e];
    value /= l;
    std::vector<int> ids(edges.begin(), edges.end());
    if (!best || value > best->value + 1e-12 ||
        (value >= best->value - 1e-12 && ids < best->matching.edge_ids())) {
      best = SecondBest{Matching(graph, std::move(ids)), value};
    }
  }
  return best;
}

std::optional<SecondBest> SecondBestResponse(const BipartiteGraph& graph,
                                             const Matching& mhat,
                                             const PairwiseMatrix& q) {
  MatchingOracle oracle(graph);
  return SecondBestResponse(oracle, mhat, q);
}

CarCond::CarCond(const BipartiteGraph& graph, CarCondOptions options)
    : graph_(&graph),
      options_(std::move(options)),
      oracle_(graph, options_.oracle),
      stats_(graph.num_edges()),
      edge_status_(graph.num_edges(), kUndecided),
      warm_(options_.warm_start ? 4 * graph.num_edges() : 0) {
  CheckDelta(options_.delta, 1.0, "delta");
  if (options_.max_idle_rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_idle_rounds must be >= 1");
  }
}

bool CarCond::ConflictsWithAccepted(int e) const {
  const Edge& edge = graph_->edge(e);
  for (int a = 0; a < graph_->num_edges(); ++a) {
    if (edge_status_[a] != kAccepted) continue;
    const Edge& other = graph_->edge(a);
    if (other.position == edge.position || other.candidate == edge.candidate) {
      return true;
    }
  }
  return false;
}

void CarCond::BeginRound() {
  ++t_;
  while (t_ > (int64_t{1} << (2 * q_))) ++q_;
  pending_.clear();
  cursor_ = 0;
  round_samples_ = 0;
  for (const auto& bucket : graph_->position_buckets()) {
    for (size_t i = 0; i < bucket.size(); ++i) {
      if (edge_status_[bucket[i]] != kUndecided) continue;
      for (size_t j = i + 1; j < bucket.size(); ++j) {
        if (edge_status_[bucket[j]] == kUndecided) {
          pending_.emplace_back(bucket[i], bucket[j]);
        }
      }
    }
  }
  round_open_ = true;
}

double CarCond::Query(int e, int kind, const ConstraintPair& c1,
                      const ConstraintPair& c2, const PairwiseMatrix& q,
                      double eps) {
  OracleWarmStart* warm =
      options_.warm_start ? &warm_[static_cast<size_t>(4 * e + kind)] : nullptr;
  OracleResult r = oracle_.Solve(c1, c2, q, eps, warm);
  ++trace_.oracle_calls;
  trace_.oracle_iterations += r.iterations;
  return r.value;
}

void CarCond::FinishRound() {
  round_open_ = false;
  ++trace_.rounds;
  ComputeBounds(*graph_, stats_, t_, options_.delta, &bounds_);
  const double eps = std::ldexp(1.0, -q_);

  ConstraintPair base;
  std::vector<int> undecided;
  for (int e = 0; e < graph_->num_edges(); ++e) {
    if (edge_status_[e] == kAccepted) base.accepted.push_back(e);
    if (edge_status_[e] == kRejected) base.rejected.push_back(e);
    if (edge_status_[e] == kUndecided) undecided.push_back(e);
  }
  int accepted = static_cast<int>(base.accepted.size());
  bool decided = false;
  try {
    for (int e : undecided) {
      ConstraintPair in = base, ex = base;
      in.accepted.push_back(e);
      std::sort(in.accepted.begin(), in.accepted.end());
      ex.rejected.push_back(e);
      std::sort(ex.rejected.begin(), ex.rejected.end());
      const double in_u = Query(e, kInUpper, in, base, bounds_.upper, eps);
      const double in_l = Query(e, kInLower, in, base, bounds_.lower, eps);
      const double ex_u = Query(e, kExUpper, ex, base, bounds_.upper, eps);
      const double ex_l = Query(e, kExLower, ex, base, bounds_.lower, eps);
      if (in_l > ex_u + eps) {
        // A same-round acceptance conflicting with A_t stays undecided.
        if (ConflictsWithAccepted(e)) continue;
        edge_status_[e] = kAccepted;
        ++accepted;
        trace_.decisions.push_back({e, true, t_, q_, trace_.samples});
        decided = true;
      } else if (ex_l > in_u + eps) {
        edge_status_[e] = kRejected;
        trace_.decisions.push_back({e, false, t_, q_, trace_.samples});
        decided = true;
      }
      if (accepted == graph_->num_positions()) {
        std::vector<int> ids;
        for (int a = 0; a < graph_->num_edges(); ++a) {
          if (edge_status_[a] == kAccepted) ids.push_back(a);
        }
        result_ = Matching(*graph_, std::move(ids));
        status_ = CarStatus::kIdentified;
        break;
      }
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kInfeasibleMinSide) {
      status_ = CarStatus::kInconsistent;
    } else if (err.code() == ErrorCode::kOracleBudgetExceeded) {
      status_ = CarStatus::kOracleBudgetExceeded;
    } else {
      throw;
    }
  }
  if (observer_) {
    observer_({t_, q_, eps, edge_status_, &bounds_});
  }
  if (status_ != CarStatus::kRunning) return;
  if (round_samples_ == 0 && !decided) {
    if (++idle_rounds_ >= options_.max_idle_rounds) {
      status_ = CarStatus::kInconsistent;
    }
  } else {
    idle_rounds_ = 0;
  }
}

void CarCond::Advance() {
  while (status_ == CarStatus::kRunning) {
    if (round_open_ && cursor_ < pending_.size()) return;
    if (round_open_) {
      FinishRound();
    } else {
      BeginRound();
    }
  }
}

CarStatus CarCond::Step(DuelEnvironment& env) {
  Advance();
  if (status_ != CarStatus::kRunning) return status_;
  if (env.exhausted()) {
    status_ = CarStatus::kBudgetExceeded;
    return status_;
  }
  const auto [e, f] = pending_[cursor_++];
  stats_.Record(e, f, env.SampleDuel(e, f));
  ++trace_.samples;
  ++round_samples_;
  Advance();
  return status_;
}

CarStatus CarCond::Run(DuelEnvironment& env) {
  while (Step(env) == CarStatus::kRunning) {
  }
  return status_;
}

std::string CarCond::Serialize() const {
  Json j;
  j["t"] = t_;
  j["q"] = q_;
  j["status"] = static_cast<int>(status_);
  j["edge_status"] = edge_status_;
  j["pending"] = pending_;
  j["cursor"] = cursor_;
  j["round_open"] = round_open_;
  j["idle_rounds"] = idle_rounds_;
  j["round_samples"] = round_samples_;
  j["stats"] = StatsToJson(stats_, *graph_);
  j["result"] = result_.edge_ids();
  Json decisions = Json::array();
  for (const EdgeDecision& d : trace_.decisions) {
    decisions.push_back({d.edge, d.accepted, d.round, d.epoch, d.samples});
  }
  j["trace"] = {{"rounds", trace_.rounds},
                {"samples", trace_.samples},
                {"oracle_calls", trace_.oracle_calls},
                {"oracle_iterations", trace_.oracle_iterations},
                {"decisions", decisions}};
  Json warm = Json::array();
  for (const OracleWarmStart& w : warm_) {
    warm.push_back({{"x", PointToJson(w.x)}, {"y_bar", w.y_bar}});
  }
  j["warm"] = warm;
  return j.dump();
}

CarCond CarCond::Deserialize(const BipartiteGraph& graph,
                             std::string_view data, CarCondOptions options) {
  const Json j = ParseState(data);
  CarCond c(graph, std::move(options));
  try {
    c.t_ = j.at("t");
    c.q_ = j.at("q");
    c.status_ = static_cast<CarStatus>(j.at("status").get<int>());
    c.edge_status_ = j.at("edge_status").get<std::vector<uint8_t>>();
    c.pending_ = j.at("pending").get<std::vector<std::pair<int, int>>>();
    c.cursor_ = j.at("cursor");
    c.round_open_ = j.at("round_open");
    c.idle_rounds_ = j.at("idle_rounds");
    c.round_samples_ = j.at("round_samples");
    c.stats_ = StatsFromJson(j.at("stats"), graph.num_edges());
    const auto ids = j.at("result").get<std::vector<int>>();
    if (!ids.empty()) c.result_ = Matching(graph, ids);
    const Json& tr = j.at("trace");
    c.trace_.rounds = tr.at("rounds");
    c.trace_.samples = tr.at("samples");
    c.trace_.oracle_calls = tr.at("oracle_calls");
    c.trace_.oracle_iterations = tr.at("oracle_iterations");
    for (const Json& d : tr.at("decisions")) {
      c.trace_.decisions.push_back({d[0], d[1], d[2], d[3], d[4]});
    }
    const Json& warm = j.at("warm");
    if (warm.size() != c.warm_.size()) {
      throw Error(ErrorCode::kParseError, "warm-start table size mismatch");
    }
    for (size_t i = 0; i < warm.size(); ++i) {
      c.warm_[i].x = PointFromJson(graph, warm[i].at("x"));
      c.warm_[i].y_bar = warm[i].at("y_bar").get<std::vector<double>>();
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  if (static_cast<int>(c.edge_status_.size()) != graph.num_edges()) {
    throw Error(ErrorCode::kParseError, "edge status size mismatch");
  }
  return c;
}

CarCond RunCarCond(DuelEnvironment& env, CarCondOptions options) {
  CarCond run(env.graph(), std::move(options));
  run.Run(env);
  return run;
}

CarVerify::CarVerify(const BipartiteGraph& graph, CarVerifyOptions options)
    : graph_(&graph),
      options_([&] {
        CheckDelta(options.delta0, 1.0, "delta0");
        CheckDelta(options.delta, options.delta0, "delta");
        options.explore.delta = options.delta0;
        return std::move(options);
      }()),
      explore_(graph, options_.explore),
      oracle_(graph),
      stats_(graph.num_edges()) {}

CarVerify CarVerify::WithHypothesis(const BipartiteGraph& graph,
                                    CarVerifyOptions options, Matching mhat) {
  CarVerify v(graph, std::move(options));
  v.hypothesis_ = std::move(mhat);
  return v;
}

void CarVerify::AdvanceVerification() {
  if (status_ != CarStatus::kRunning || !hypothesis_ || pending_) return;
  const Matching& mhat = *hypothesis_;
  ComputeBounds(*graph_, stats_, t_, options_.delta, &bounds_);
  std::optional<SecondBest> low =
      SecondBestResponse(oracle_, mhat, bounds_.lower);
  if (!low) {
    result_ = mhat;
    status_ = CarStatus::kIdentified;
    return;
  }
  if (low->value >= 0.5) {
    status_ = CarStatus::kVerificationError;
    return;
  }
  std::optional<SecondBest> high =
      SecondBestResponse(oracle_, mhat, bounds_.upper);
  if (high->value <= 0.5) {
    result_ = mhat;
    status_ = CarStatus::kIdentified;
    return;
  }
  const int64_t k = graph_->num_duels();
  double best = -1.0;
  for (int j = 0; j < graph_->num_positions(); ++j) {
    const int e = high->matching.EdgeAt(j), f = mhat.EdgeAt(j);
    if (e == f) continue;
    const double r = PairRadius(stats_, e, f, t_, options_.delta, k);
    if (r > best) {
      best = r;
      pending_ = std::make_pair(e, f);
    }
  }
}

CarStatus CarVerify::Step(DuelEnvironment& env) {
  if (status_ != CarStatus::kRunning) return status_;
  if (!hypothesis_) {
    const CarStatus s = explore_.Step(env);
    trace_.exploration_samples = explore_.trace().samples;
    if (s == CarStatus::kIdentified) {
      hypothesis_ = explore_.result();
      AdvanceVerification();
    } else if (s != CarStatus::kRunning) {
      status_ = s;
    }
    return status_;
  }
  AdvanceVerification();
  if (status_ != CarStatus::kRunning) return status_;
  if (env.exhausted()) {
    status_ = CarStatus::kBudgetExceeded;
    return status_;
  }
  const auto [e, f] = *pending_;
  pending_.reset();
  stats_.Record(e, f, env.SampleDuel(e, f));
  ++trace_.verification_samples;
  ++trace_.verification_rounds;
  ++t_;
  AdvanceVerification();
  return status_;
}

CarStatus CarVerify::Run(DuelEnvironment& env) {
  while (Step(env) == CarStatus::kRunning) {
  }
  return status_;
}

std::string CarVerify::Serialize() const {
  Json j;
  j["explore"] = Json::parse(explore_.Serialize());
  j["hypothesis"] =
      hypothesis_ ? Json(hypothesis_->edge_ids()) : Json(nullptr);
  j["stats"] = StatsToJson(stats_, *graph_);
  j["t"] = t_;
  j["pending"] = pending_ ? Json(*pending_) : Json(nullptr);
  j["status"] = static_cast<int>(status_);
  j["result"] = result_.edge_ids();
  j["trace"] = {trace_.exploration_samples, trace_.verification_samples,
                trace_.verification_rounds};
  return j.dump();
}

CarVerify CarVerify::Deserialize(const BipartiteGraph& graph,
                                 std::string_view data,
                                 CarVerifyOptions options) {
  const Json j = ParseState(data);
  CarVerify v(graph, std::move(options));
  try {
    v.explore_ = CarCond::Deserialize(graph, j.at("explore").dump(),
                                      v.options_.explore);
    if (!j.at("hypothesis").is_null()) {
      v.hypothesis_ =
          Matching(graph, j.at("hypothesis").get<std::vector<int>>());
    }
    v.stats_ = StatsFromJson(j.at("stats"), graph.num_edges());
    v.t_ = j.at("t");
    if (!j.at("pending").is_null()) {
      v.pending_ = j.at("pending").get<std::pair<int, int>>();
    }
    v.status_ = static_cast<CarStatus>(j.at("status").get<int>());
    const auto ids = j.at("result").get<std::vector<int>>();
    if (!ids.empty()) v.result_ = Matching(graph, ids);
    const Json& tr = j.at("trace");
    v.trace_ = {tr[0], tr[1], tr[2]};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return v;
}

std::vector<int> ScheduledInstances(int64_t t) {
  if (t < 1) throw Error(ErrorCode::kInvalidArgument, "tick must be >= 1");
  std::vector<int> ks;
  for (int k = 0; k < 63 && t % (int64_t{1} << k) == 0; ++k) ks.push_back(k);
  return ks;
}

ScheduleOutcome RunParallelSchedule(
    const std::function<CarStatus(int)>& advance, int64_t max_ticks,
    const std::function<void(int64_t, std::span<const int>)>& observer) {
  ScheduleOutcome out;
  std::vector<uint8_t> retired;
  std::vector<int> advanced;
  for (int64_t t = 1; t <= max_ticks; ++t) {
    out.ticks = t;
    advanced.clear();
    for (int k : ScheduledInstances(t)) {
      if (k < static_cast<int>(retired.size()) && retired[k]) continue;
      advanced.push_back(k);
      const CarStatus s = advance(k);
      if (s == CarStatus::kRunning) continue;
      if (s == CarStatus::kIdentified) {
        out.winner = k;
        out.status = s;
        break;
      }
      if (s == CarStatus::kBudgetExceeded) {
        out.status = s;
        break;
      }
      if (static_cast<int>(retired.size()) <= k) retired.resize(k + 1, 0);
      retired[k] = 1;
      out.retired.push_back(k);
    }
    if (observer) observer(t, advanced);
    if (out.status != CarStatus::kRunning) return out;
  }
  out.status = CarStatus::kBudgetExceeded;
  return out;
}

CarParallelResult RunCarParallel(DuelEnvironment& env,
                                 CarParallelOptions options) {
  CheckDelta(options.delta0, 1.0, "delta0");
  CheckDelta(options.delta, options.delta0, "delta");
  const BipartiteGraph& graph = env.graph();
  std::vector<CarVerify> instances;
  CarParallelResult result;
  auto advance = [&](int k) {
    while (static_cast<int>(instances.size()) <= k) {
      CarVerifyOptions o;
      o.delta = std::ldexp(options.delta,
                           -(static_cast<int>(instances.size()) + 1));
      o.delta0 = options.delta0;
      o.explore = options.explore;
      instances.emplace_back(graph, std::move(o));
    }
    return instances[k].Step(env);
  };
  result.schedule = RunParallelSchedule(advance, options.max_ticks);
  result.status = result.schedule.status;
  if (result.schedule.winner >= 0) {
    result.matching = instances[result.schedule.winner].result();
  }
  for (const CarVerify& v : instances) {
    result.instance_samples.push_back(v.samples());
    result.samples += v.samples();
  }
  return result;
}

}  // namespace cpedb

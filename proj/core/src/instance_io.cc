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
#include "cpedb/instance_io.h"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cpedb/errors.h"
#include "json_util.h"

namespace cpedb {
namespace {

using internal::FailAt;
using internal::Json;
using internal::KeyLines;

constexpr std::string_view kWhat = "instance";

int IntAt(const Json& node, std::string_view key, const KeyLines& lines,
          std::string_view path) {
  if (!node.contains(key) || !node[std::string(key)].is_number_integer()) {
    FailAt(kWhat, lines.Line(path),
           "'" + std::string(path) + "' must be an integer");
  }
  return node[std::string(key)].get<int>();
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  const Json root = internal::ParseJson(text, kWhat);
  const KeyLines lines(text);
  if (!root.is_object()) FailAt(kWhat, 1, "top level must be an object");
  for (const auto& [key, value] : root.items()) {
    if (key != "name" && key != "graph" && key != "preference") {
      FailAt(kWhat, lines.Line(key),
             "unknown key '" + key + "' (expected name, graph, preference)");
    }
  }
  if (!root.contains("graph") || !root["graph"].is_object()) {
    FailAt(kWhat, lines.Line("graph"), "missing object 'graph'");
  }
  const Json& g = root["graph"];
  const int n = IntAt(g, "candidates", lines, "graph.candidates");
  const int l = IntAt(g, "positions", lines, "graph.positions");
  if (!g.contains("edges") || !g["edges"].is_array()) {
    FailAt(kWhat, lines.Line("graph.edges"), "missing list 'graph.edges'");
  }
  std::vector<Edge> edges;
  for (const Json& pair : g["edges"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      FailAt(kWhat, lines.Line("graph.edges"),
             "each edge must be [candidate, position]");
    }
    edges.push_back({pair[0].get<int>(), pair[1].get<int>()});
  }
  const int m = static_cast<int>(edges.size());
  std::optional<BipartiteGraph> graph;
  try {
    graph.emplace(n, l, std::move(edges));
  } catch (const Error& e) {
    FailAt(kWhat, lines.Line("graph"), e.what());
  }
  std::vector<int> order = graph->canonical_index();

  if (!root.contains("preference") || !root["preference"].is_object()) {
    FailAt(kWhat, lines.Line("preference"), "missing object 'preference'");
  }
  const Json& p = root["preference"];
  const int pm = IntAt(p, "m", lines, "preference.m");
  if (pm != m) {
    FailAt(kWhat, lines.Line("preference.m"),
           "preference.m = " + std::to_string(pm) + " but the graph has " +
               std::to_string(m) + " edges");
  }
  if (!p.contains("entries") || !p["entries"].is_array()) {
    FailAt(kWhat, lines.Line("preference.entries"),
           "missing list 'preference.entries'");
  }
  std::vector<std::tuple<int, int, double>> entries;
  for (const Json& t : p["entries"]) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number()) {
      FailAt(kWhat, lines.Line("preference.entries"),
             "each entry must be [i, j, p]");
    }
    const int i = t[0].get<int>();
    const int j = t[1].get<int>();
    if (i < 0 || j < 0 || i >= m || j >= m) {
      FailAt(kWhat, lines.Line("preference.entries"),
             "entry index out of range");
    }
    int ci = order[i];
    int cj = order[j];
    double value = t[2].get<double>();
    if (ci > cj) {
      std::swap(ci, cj);
      value = 1.0 - value;
    }
    entries.emplace_back(ci, cj, value);
  }
  std::optional<PreferenceMatrix> pref;
  try {
    pref.emplace(PreferenceMatrix::FromUpperEntries(*graph, entries));
  } catch (const Error& e) {
    FailAt(kWhat, lines.Line("preference"), e.what());
  }
  std::string name;
  if (root.contains("name")) {
    if (!root["name"].is_string()) {
      FailAt(kWhat, lines.Line("name"), "'name' must be a string");
    }
    name = root["name"].get<std::string>();
  }
  return Instance{std::move(name), std::move(*graph), std::move(*pref),
                  std::move(order)};
}

Instance LoadInstance(const std::string& path) {
  return ParseInstance(ReadFile(path));
}

std::string InstanceToJson(const Instance& instance) {
  Json edges = Json::array();
  for (const Edge& e : instance.graph.edges()) {
    edges.push_back({e.candidate, e.position});
  }
  Json entries = Json::array();
  for (const auto& [i, j, p] :
       instance.preference.UpperEntries(instance.graph)) {
    entries.push_back({i, j, p});
  }
  Json root;
  root["name"] = instance.name;
  root["graph"] = {{"candidates", instance.graph.num_candidates()},
                   {"positions", instance.graph.num_positions()},
                   {"edges", edges}};
  root["preference"] = {{"m", instance.graph.num_edges()},
                        {"entries", entries}};
  return root.dump(2) + "\n";
}

ConstraintPair ParseConstraintPair(std::string_view text) {
  constexpr std::string_view kConstraints = "constraints";
  return internal::ConstraintPairFromJson(
      internal::ParseJson(text, kConstraints), kConstraints, KeyLines(text),
      "");
}

std::pair<ConstraintPair, ConstraintPair> ParseConstraintPairs(
    std::string_view text) {
  constexpr std::string_view kConstraints = "constraints";
  const Json root = internal::ParseJson(text, kConstraints);
  const KeyLines lines(text);
  if (!root.is_object()) FailAt(kConstraints, 1, "must be an object");
  std::pair<ConstraintPair, ConstraintPair> out;
  for (const auto& [key, value] : root.items()) {
    if (key == "c1") {
      out.first =
          internal::ConstraintPairFromJson(value, kConstraints, lines, "c1");
    } else if (key == "c2") {
      out.second =
          internal::ConstraintPairFromJson(value, kConstraints, lines, "c2");
    } else {
      FailAt(kConstraints, lines.Line(key),
             "unknown key '" + key + "' (expected c1, c2)");
    }
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, path + ": " + std::strerror(errno));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, path + ": " + std::strerror(errno));
  }
  out << contents;
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoError, path + ": " + std::strerror(errno));
  }
}

}  // namespace cpedb

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
#ifndef CPEDB_INSTANCE_IO_H_
#define CPEDB_INSTANCE_IO_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpedb/bipartite_graph.h"
#include "cpedb/preference.h"

namespace cpedb {

// A graph with its hidden preference matrix.
//
// File format:
//   {"name": "...",
//    "graph": {"candidates": n, "positions": l, "edges": [[c, j], ...]},
//    "preference": {"m": m, "entries": [[i, j, p], ...]}}
// Preference indices refer to the edges in file order. Edges are re-sorted to
// canonical order on load; input_order[i] is the canonical index of file
// edge i.
struct Instance {
  std::string name;
  BipartiteGraph graph;
  PreferenceMatrix preference;
  std::vector<int> input_order;
};

// Parse errors carry kParseError and a line:column prefix.
Instance ParseInstance(std::string_view text);
Instance LoadInstance(const std::string& path);

// Canonical edge order, so input_order of the result is the identity.
std::string InstanceToJson(const Instance& instance);

// {"accepted": [...], "rejected": [...]}, canonical edge indices. Missing
// keys mean empty lists.
ConstraintPair ParseConstraintPair(std::string_view text);
// {"c1": {...}, "c2": {...}}; a missing side is unconstrained.
std::pair<ConstraintPair, ConstraintPair> ParseConstraintPairs(
    std::string_view text);

// Whole file as a string; kIoError with the OS message on failure.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace cpedb

#endif  // CPEDB_INSTANCE_IO_H_

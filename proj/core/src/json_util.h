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
#ifndef CPEDB_SRC_JSON_UTIL_H_
#define CPEDB_SRC_JSON_UTIL_H_

#include <map>
#include <string>
#include <string_view>

#include "cpedb/bipartite_graph.h"
#include "json.hpp"

namespace cpedb::internal {

using Json = nlohmann::json;

// 1-based line of each object key, by dotted path ("sampler.mode"). Keys
// inside arrays are not indexed. The first occurrence wins.
class KeyLines {
 public:
  explicit KeyLines(std::string_view text);

  // Line of the key, or of the closest indexed ancestor, or 1.
  int Line(std::string_view path) const;

 private:
  std::map<std::string, int, std::less<>> lines_;
};

// Parses text; syntax errors become kParseError "line L, column C: ...".
Json ParseJson(std::string_view text, std::string_view what);

// kParseError "<what>: line L: <message>".
[[noreturn]] void FailAt(std::string_view what, int line,
                         const std::string& message);

// {"accepted": [...], "rejected": [...]} at the given path ("" for the
// root). Missing keys mean empty lists.
ConstraintPair ConstraintPairFromJson(const Json& node, std::string_view what,
                                      const KeyLines& lines,
                                      const std::string& path);

}  // namespace cpedb::internal

#endif  // CPEDB_SRC_JSON_UTIL_H_

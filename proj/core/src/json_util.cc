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
#include "json_util.h"

#include <string>
#include <vector>

#include "cpedb/errors.h"

namespace cpedb::internal {

KeyLines::KeyLines(std::string_view text) {
  // One frame per open container: for objects, the path of the object and
  // the last key read.
  struct Frame {
    bool object = false;
    std::string path;
    std::string key;
  };
  std::vector<Frame> stack;
  int line = 1;
  size_t i = 0;
  auto read_string = [&]() {
    std::string out;
    ++i;
    while (i < text.size() && text[i] != '"') {
      if (text[i] == '\\' && i + 1 < text.size()) ++i;
      if (text[i] == '\n') ++line;
      out.push_back(text[i]);
      ++i;
    }
    ++i;
    return out;
  };
  auto child_path = [&]() -> std::string {
    if (stack.empty()) return "";
    const Frame& top = stack.back();
    if (!top.object) return top.path + "[]";
    return top.path.empty() ? top.key : top.path + "." + top.key;
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      ++i;
    } else if (ch == '"') {
      const int start_line = line;
      std::string s = read_string();
      size_t j = i;
      while (j < text.size() &&
             (text[j] == ' ' || text[j] == '\t' || text[j] == '\r' ||
              text[j] == '\n')) {
        ++j;
      }
      if (!stack.empty() && stack.back().object && j < text.size() &&
          text[j] == ':') {
        stack.back().key = s;
        const std::string path = child_path();
        if (path.find("[]") == std::string::npos) {
          lines_.emplace(path, start_line);
        }
      }
    } else if (ch == '{' || ch == '[') {
      Frame frame;
      frame.object = ch == '{';
      frame.path = child_path();
      stack.push_back(std::move(frame));
      ++i;
    } else if (ch == '}' || ch == ']') {
      if (!stack.empty()) stack.pop_back();
      ++i;
    } else {
      ++i;
    }
  }
}

int KeyLines::Line(std::string_view path) const {
  std::string p(path);
  while (true) {
    auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    const size_t dot = p.rfind('.');
    if (dot == std::string::npos) return 1;
    p.resize(dot);
  }
}

Json ParseJson(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    int line = 1;
    size_t line_start = 0;
    for (size_t k = 0; k < byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        line_start = k + 1;
      }
    }
    const size_t column = byte >= line_start ? byte - line_start + 1 : 1;
    std::string message = e.what();
    const size_t colon = message.find(": ");
    if (colon != std::string::npos) message = message.substr(colon + 2);
    throw Error(ErrorCode::kParseError,
                std::string(what) + ": line " + std::to_string(line) +
                    ", column " + std::to_string(column) + ": " + message);
  }
}

void FailAt(std::string_view what, int line, const std::string& message) {
  throw Error(ErrorCode::kParseError, std::string(what) + ": line " +
                                          std::to_string(line) + ": " +
                                          message);
}

ConstraintPair ConstraintPairFromJson(const Json& node, std::string_view what,
                                      const KeyLines& lines,
                                      const std::string& path) {
  const auto sub = [&](std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  };
  if (!node.is_object()) {
    FailAt(what, lines.Line(path), "constraints must be an object");
  }
  for (const auto& [key, value] : node.items()) {
    if (key != "accepted" && key != "rejected") {
      FailAt(what, lines.Line(sub(key)),
             "unknown key '" + key + "' (expected accepted, rejected)");
    }
  }
  ConstraintPair c;
  for (const char* key : {"accepted", "rejected"}) {
    if (!node.contains(key)) continue;
    const Json& list = node[key];
    if (!list.is_array()) {
      FailAt(what, lines.Line(sub(key)), "'" + sub(key) + "' must be a list");
    }
    std::vector<int>& out =
        std::string_view(key) == "accepted" ? c.accepted : c.rejected;
    for (const Json& v : list) {
      if (!v.is_number_integer()) {
        FailAt(what, lines.Line(sub(key)),
               "'" + sub(key) + "' must hold integers");
      }
      out.push_back(v.get<int>());
    }
  }
  return c;
}

}  // namespace cpedb::internal

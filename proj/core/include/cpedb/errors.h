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

#ifndef CPEDB_ERRORS_H_
#define CPEDB_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpedb {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidGraph,
  kInvalidPreference,
  kInfeasibleConstraints,
  kInstanceTooLarge,
  kNonUniqueWinner,
  kIncomparablePair,
  kNotMixed,
  kInfeasibleMinSide,
  kOracleBudgetExceeded,
  kBudgetExceeded,
  kParseError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers branch on the failure class without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cpedb

#endif  // CPEDB_ERRORS_H_

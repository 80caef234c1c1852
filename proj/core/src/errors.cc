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

#include "cpedb/errors.h"

namespace cpedb {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInvalidGraph:
      return "InvalidGraph";
    case ErrorCode::kInvalidPreference:
      return "InvalidPreference";
    case ErrorCode::kInfeasibleConstraints:
      return "InfeasibleConstraints";
    case ErrorCode::kInstanceTooLarge:
      return "InstanceTooLarge";
    case ErrorCode::kNonUniqueWinner:
      return "NonUniqueWinner";
    case ErrorCode::kIncomparablePair:
      return "IncomparablePair";
    case ErrorCode::kNotMixed:
      return "NotMixed";
    case ErrorCode::kInfeasibleMinSide:
      return "InfeasibleMinSide";
    case ErrorCode::kOracleBudgetExceeded:
      return "OracleBudgetExceeded";
    case ErrorCode::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace cpedb

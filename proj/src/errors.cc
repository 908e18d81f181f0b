// Copyright 2026 The triplechannel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "triplechannel/errors.h"

#include <utility>

namespace triplechannel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateDenominator: return "degenerate_denominator";
    case ErrorKind::kTieCase: return "tie_case";
    case ErrorKind::kSingularDenominator: return "singular_denominator";
    case ErrorKind::kSingularSystem: return "singular_system";
    case ErrorKind::kBracketMiss: return "bracket_miss";
    case ErrorKind::kInvalidSpec: return "invalid_spec";
    case ErrorKind::kInsufficientData: return "insufficient_data";
    case ErrorKind::kMissingField: return "missing_field";
    case ErrorKind::kTypeError: return "type_error";
    case ErrorKind::kUnknownField: return "unknown_field";
    case ErrorKind::kInvalidParams: return "invalid_params";
    case ErrorKind::kIo: return "io_error";
  }
  return "unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateDenominator:
    case ErrorKind::kTieCase:
    case ErrorKind::kSingularDenominator:
    case ErrorKind::kSingularSystem:
    case ErrorKind::kBracketMiss:
      return true;
    default:
      return false;
  }
}

ModelError::ModelError(ErrorKind kind, std::string detail,
                       const std::string& message)
    : std::runtime_error(message), kind_(kind), detail_(std::move(detail)) {}

}  // namespace triplechannel

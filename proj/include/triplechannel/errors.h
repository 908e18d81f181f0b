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

#ifndef TRIPLECHANNEL_ERRORS_H_
#define TRIPLECHANNEL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace triplechannel {

enum class ErrorKind {
  kDegenerateDenominator,
  kTieCase,
  kSingularDenominator,
  kSingularSystem,
  kBracketMiss,
  kInvalidSpec,
  kInsufficientData,
  kMissingField,
  kTypeError,
  kUnknownField,
  kInvalidParams,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// True for errors caused by the numbers themselves (vanishing denominators,
// singular systems, threshold ties) rather than by malformed input.
bool is_numerical(ErrorKind kind);

// Every failure in the library is reported through this type. `detail` names
// the offending denominator, field, or parameter so callers can build
// targeted messages without parsing what().
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorKind kind, std::string detail, const std::string& message);

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace triplechannel

#endif  // TRIPLECHANNEL_ERRORS_H_

// Copyright 2026 The fidaudit Authors.
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

#ifndef FIDAUDIT_COMMON_ERROR_HPP_
#define FIDAUDIT_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fidaudit {

// Closed set of failure categories. The numeric values are mirrored by the
// FA_E_* status codes of the C API, so append only.
enum class ErrorCode {
  kParse = 1,
  kSchema,
  kUnknownCode,
  kDuplicateId,
  kInsufficientData,
  kOutOfBounds,
  kUnknownLabel,
  kEmptyLabelSet,
  kNameCollision,
  kUnknownMismatch,
  kSchemaMismatch,
  kEmptyInput,
  kDocMismatch,
  kMixedModes,
  kDimensionMismatch,
  kEmptyAfterOov,
  kSolverFailure,
  kLengthMismatch,
  kZeroVariance,
  kTooFewPoints,
  kInsufficientOverlap,
  kProvider,
  kBudgetExceeded,
  kMissingRepresentation,
  kVersionConflict,
  kNotFound,
  kValidation,
  kIo,
  kInvalidArgument,
  kInternal,
};

// Stable machine-readable name, e.g. "ParseError", "UnknownCode".
const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fidaudit

#endif  // FIDAUDIT_COMMON_ERROR_HPP_

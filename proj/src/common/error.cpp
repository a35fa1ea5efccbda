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

#include "common/error.hpp"

namespace fidaudit {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kUnknownCode: return "UnknownCode";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kEmptyLabelSet: return "EmptyLabelSet";
    case ErrorCode::kNameCollision: return "NameCollision";
    case ErrorCode::kUnknownMismatch: return "UnknownMismatch";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDocMismatch: return "DocMismatch";
    case ErrorCode::kMixedModes: return "MixedModes";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyAfterOov: return "EmptyAfterOov";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kInsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::kProvider: return "ProviderError";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kMissingRepresentation: return "MissingRepresentation";
    case ErrorCode::kVersionConflict: return "VersionConflict";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "InternalError";
}

}  // namespace fidaudit

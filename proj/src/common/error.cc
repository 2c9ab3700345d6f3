/*
 * Copyright 2026 The BiasAudit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "biasaudit/common/error.h"

namespace biasaudit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownQuestion: return "UnknownQuestion";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kMalformedTriple: return "MalformedTriple";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kUnknownArticle: return "UnknownArticle";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyLog: return "EmptyLog";
    case ErrorCode::kEmptyHistory: return "EmptyHistory";
    case ErrorCode::kEmptyRecommendations: return "EmptyRecommendations";
    case ErrorCode::kInsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kNoNegatives: return "NoNegatives";
    case ErrorCode::kDivergenceDetected: return "DivergenceDetected";
    case ErrorCode::kLeakage: return "Leakage";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMalformedRecord:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kUnknownQuestion:
    case ErrorCode::kInvalidProbability:
    case ErrorCode::kMalformedTriple:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kMissingEmbedding:
    case ErrorCode::kUnknownArticle:
    case ErrorCode::kLengthMismatch:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace biasaudit

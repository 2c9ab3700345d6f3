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


#ifndef BIASAUDIT_COMMON_ERROR_H_
#define BIASAUDIT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace biasaudit {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  // Input validation.
  kMalformedRecord,
  kDuplicateId,
  kUnknownQuestion,
  kInvalidProbability,
  kMalformedTriple,
  kDimensionMismatch,
  kMissingEmbedding,
  kUnknownArticle,
  kLengthMismatch,
  // Degenerate data.
  kEmptyCorpus,
  kEmptyInput,
  kEmptyLog,
  kEmptyHistory,
  kEmptyRecommendations,
  kInsufficientCandidates,
  kCorpusTooSmall,
  kSingleClass,
  kZeroVariance,
  kTooFewSamples,
  // Model / pipeline.
  kNoNegatives,
  kDivergenceDetected,
  kLeakage,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for codes caused by malformed user input rather than by the data or
// the computation (the CLI maps these to exit code 1).
bool IsValidationError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace biasaudit

#endif  // BIASAUDIT_COMMON_ERROR_H_

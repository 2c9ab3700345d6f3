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


#ifndef BIASAUDIT_EVAL_METRICS_H_
#define BIASAUDIT_EVAL_METRICS_H_

#include <span>

namespace biasaudit {

inline constexpr double kDefaultThreshold = 0.5;

// Fraction of records where (score >= threshold) agrees with the label.
// Throws LengthMismatch, EmptyInput.
double Accuracy(std::span<const double> scores, std::span<const int> labels,
                double threshold = kDefaultThreshold);

// Mann-Whitney AUC from tie-averaged ranks: P(pos > neg) + P(tie) / 2.
// Throws LengthMismatch, SingleClass.
double Auc(std::span<const double> scores, std::span<const int> labels);

// F1 of the positive class at `threshold`. 0 when nothing is predicted
// positive or precision + recall is 0. Throws LengthMismatch.
double F1Score(std::span<const double> scores, std::span<const int> labels,
               double threshold = kDefaultThreshold);

}  // namespace biasaudit

#endif  // BIASAUDIT_EVAL_METRICS_H_

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


#include "biasaudit/eval/metrics.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "biasaudit/common/error.h"

namespace biasaudit {
namespace {

void CheckLengths(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(scores.size()) + " scores vs " +
                    std::to_string(labels.size()) + " labels");
  }
}

}  // namespace

double Accuracy(std::span<const double> scores, std::span<const int> labels,
                double threshold) {
  CheckLengths(scores, labels);
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "accuracy of nothing");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const int predicted = scores[i] >= threshold ? 1 : 0;
    if (predicted == (labels[i] != 0 ? 1 : 0)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(scores.size());
}

double Auc(std::span<const double> scores, std::span<const int> labels) {
  CheckLengths(scores, labels);
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (int y : labels) positives += y != 0 ? 1 : 0;
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClass, "AUC needs both labels");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Sum of 1-based ranks of positives, ties sharing their average rank.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    std::size_t tied_positives = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      tied_positives += labels[order[j]] != 0 ? 1 : 0;
      ++j;
    }
    const double average_rank = 0.5 * static_cast<double>(i + 1 + j);
    positive_rank_sum += average_rank * static_cast<double>(tied_positives);
    i = j;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

double F1Score(std::span<const double> scores, std::span<const int> labels,
               double threshold) {
  CheckLengths(scores, labels);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] != 0;
    if (predicted && actual) ++tp;
    if (predicted && !actual) ++fp;
    if (!predicted && actual) ++fn;
  }
  if (tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace biasaudit

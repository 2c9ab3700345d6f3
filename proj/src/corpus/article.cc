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


#include "biasaudit/corpus/article.h"

#include <algorithm>
#include <cmath>

#include "biasaudit/common/error.h"

namespace biasaudit {

std::vector<QuestionId> DefaultQuestions() {
  return {QuestionId("Q1"), QuestionId("Q2"), QuestionId("Q3"),
          QuestionId("Q4"), QuestionId("Q5")};
}

std::vector<QuestionId> ParseQuestionList(std::string_view csv) {
  std::vector<QuestionId> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view token = csv.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) out.emplace_back(std::string(token));
    start = end + 1;
  }
  return out;
}

std::string_view StanceLabelName(StanceLabel label) {
  return label == StanceLabel::kFavor ? "favor" : "against";
}

std::optional<StanceLabel> ParseStanceLabel(std::string_view text) {
  if (text == "favor") return StanceLabel::kFavor;
  if (text == "against") return StanceLabel::kAgainst;
  return std::nullopt;
}

StanceLabel NewsArticle::stance(const QuestionId& q) const {
  auto it = stances.find(q);
  if (it == stances.end()) {
    throw Error(ErrorCode::kUnknownQuestion,
                "article " + id + " has no stance for " + q.value());
  }
  return it->second;
}

double SentimentScoreFromProbs(double p_positive, double p_negative) {
  // Small slack for probabilities that were serialized with rounding.
  constexpr double kSlack = 1e-9;
  if (!std::isfinite(p_positive) || !std::isfinite(p_negative) ||
      p_positive < 0.0 || p_negative < 0.0 ||
      p_positive + p_negative > 1.0 + kSlack) {
    throw Error(ErrorCode::kInvalidProbability,
                "need p_p >= 0, p_n >= 0, p_p + p_n <= 1; got p_p=" +
                    std::to_string(p_positive) +
                    " p_n=" + std::to_string(p_negative));
  }
  return std::clamp(p_positive - p_negative, -1.0, 1.0);
}

}  // namespace biasaudit

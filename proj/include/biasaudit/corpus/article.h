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


#ifndef BIASAUDIT_CORPUS_ARTICLE_H_
#define BIASAUDIT_CORPUS_ARTICLE_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biasaudit {

// Identifier of a stance question ("Q1".."Q5" by default; the manifest may
// declare others).
class QuestionId {
 public:
  QuestionId() = default;
  explicit QuestionId(std::string value) : value_(std::move(value)) {}

  const std::string& value() const { return value_; }

  auto operator<=>(const QuestionId&) const = default;

 private:
  std::string value_;
};

std::vector<QuestionId> DefaultQuestions();

// Parses "Q1,Q3" style lists. Empty input yields an empty list.
std::vector<QuestionId> ParseQuestionList(std::string_view csv);

// The annotation scheme is binary; there is no neutral stance.
enum class StanceLabel { kFavor, kAgainst };

std::string_view StanceLabelName(StanceLabel label);  // "favor" / "against"
std::optional<StanceLabel> ParseStanceLabel(std::string_view text);

// Favor -> +1, Against -> -1.
inline double StanceScore(StanceLabel label) {
  return label == StanceLabel::kFavor ? 1.0 : -1.0;
}

struct NewsArticle {
  std::string id;
  std::string title;
  std::string body;
  std::string outlet;
  std::string published_at;
  double sentiment_score = 0.0;
  std::map<QuestionId, StanceLabel> stances;
  std::vector<std::string> entity_ids;
  std::int64_t word_count = 0;

  // Throws UnknownQuestion if the article carries no label for `q`.
  StanceLabel stance(const QuestionId& q) const;
};

// s = p_p - p_n. Requires p_p, p_n >= 0 and p_p + p_n <= 1 (the remainder is
// the neutral probability); throws InvalidProbability otherwise.
double SentimentScoreFromProbs(double p_positive, double p_negative);

}  // namespace biasaudit

#endif  // BIASAUDIT_CORPUS_ARTICLE_H_

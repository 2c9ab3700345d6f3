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


#ifndef BIASAUDIT_BIAS_BIAS_H_
#define BIASAUDIT_BIAS_BIAS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biasaudit/bias/stats.h"
#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/interactions.h"
#include "biasaudit/recommenders/recommender.h"

namespace biasaudit {

inline constexpr double kDefaultEpsilon = 0.05;

// What a bias score measures: article sentiment, or the +/-1 stance toward
// one question.
struct BiasKind {
  enum class Type { kSentiment, kStance };
  Type type = Type::kSentiment;
  QuestionId question;  // only for kStance

  static BiasKind Sentiment() { return {}; }
  static BiasKind Stance(QuestionId q) { return {Type::kStance, std::move(q)}; }

  // "sentiment" or "stance:Q1".
  std::string name() const;
  friend bool operator==(const BiasKind&, const BiasKind&) = default;
};

// Inverse of BiasKind::name; throws InvalidArgument.
BiasKind ParseBiasKind(std::string_view text);

// The article's sentiment score or stance score for the kind.
double ArticleBias(const NewsArticle& article, const BiasKind& kind);

// Mean article bias over the history. Throws EmptyHistory.
double UserBias(const UserHistory& history, const Corpus& corpus,
                const BiasKind& kind);

// Mean article bias over recommended articles. Throws EmptyRecommendations.
double RecommenderBiasPerUser(std::span<const Recommendation> recs,
                              const Corpus& corpus, const BiasKind& kind);

// Arithmetic mean. Throws EmptyInput.
double AverageRecommenderBias(std::span<const double> per_user);

// C1 same direction, C2 opposite directions, C3 recommender balanced,
// C4 user balanced, C5 both balanced.
enum class BiasCase { kC1, kC2, kC3, kC4, kC5 };
inline constexpr std::size_t kNumBiasCases = 5;

std::string_view BiasCaseName(BiasCase c);

// Balanced means |x| <= epsilon.
BiasCase ClassifyBiasCase(double user_bias, double rec_bias,
                          double epsilon = kDefaultEpsilon);

// Corpus-level reference: mean sentiment, or the stance average.
double CorpusBias(const Corpus& corpus, const BiasKind& kind);

struct AuditConfig {
  std::size_t k = kDefaultTopK;
  double epsilon = kDefaultEpsilon;
  bool include_sentiment = true;
  std::vector<QuestionId> questions;  // empty: the corpus questions
  int jobs = 1;
  std::string test_set = "complete";  // recorded in the report only
};

// A statistic that may be undefined for the data at hand.
template <typename T>
struct MaybeStat {
  std::optional<T> value;
  std::string note;  // why it is missing, e.g. "ZeroVariance"
};

struct KindSummary {
  BiasKind kind;
  double corpus_bias = 0.0;
  double average_user_bias = 0.0;
  double average_rec_bias = 0.0;
  std::array<std::size_t, kNumBiasCases> case_counts{};
  MaybeStat<PearsonResult> pearson;
  MaybeStat<TTestResult> user_vs_corpus;     // one-sample
  MaybeStat<TTestResult> rec_vs_user;        // paired
  MaybeStat<TTestResult> rec_vs_user_welch;  // unpaired, unequal variance
  MaybeStat<TTestResult> rec_vs_corpus;      // one-sample
};

struct UserAudit {
  std::string user_id;
  std::size_t history_size = 0;
  std::vector<std::string> recommended;
  std::vector<double> user_bias;  // aligned with BiasReport::kinds
  std::vector<double> rec_bias;
  std::vector<BiasCase> cases;
};

struct BiasReport {
  std::string model_name;
  std::string test_set;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::vector<BiasKind> kinds;
  std::vector<UserAudit> users;  // ascending user id
  std::vector<KindSummary> summaries;  // aligned with kinds
};

// Kinds audited under `config` for `corpus`.
std::vector<BiasKind> AuditKinds(const Corpus& corpus, const AuditConfig& config);

// Top-k recommendations for every user over the corpus minus their history,
// then per-kind biases, cases, correlation and t-tests. Throws EmptyInput
// for no users, EmptyHistory for an empty history.
BiasReport Audit(const Recommender& recommender,
                 std::span<const UserHistory> users, const Corpus& corpus,
                 const AuditConfig& config = {});

// Users with Chosen records in the test set (or in any split when `set` is
// empty); each history holds all of that user's Chosen clicks in log order.
std::vector<UserHistory> AuditUsers(const InteractionLog& log,
                                    std::optional<TestSet> set);

// Stable rendering: fixed key order, no timestamps.
std::string ReportToJson(const BiasReport& report);
BiasReport ReportFromJson(std::string_view json_text);
std::string ReportToMarkdown(const BiasReport& report);

// "*" for p < 0.01, "**" for p < 0.05, "" otherwise.
std::string_view SignificanceStars(double p);

}  // namespace biasaudit

#endif  // BIASAUDIT_BIAS_BIAS_H_

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


#ifndef BIASAUDIT_RECOMMENDERS_RECOMMENDER_H_
#define BIASAUDIT_RECOMMENDERS_RECOMMENDER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/interactions.h"
#include "biasaudit/recommenders/vectors.h"

namespace biasaudit {

inline constexpr std::size_t kDefaultTopK = 5;

struct Recommendation {
  std::string article_id;
  double raw_similarity = 0.0;
  // Min-max scaled similarity for text recommenders, the predicted click
  // probability for probabilistic ones.
  double click_score = 0.0;
  int rank = 0;  // 1-based
};

struct ScoredArticle {
  std::string article_id;
  double score = 0.0;
};

// Common contract: score candidate articles for a user history. Scoring is
// const and safe to call concurrently.
class Recommender {
 public:
  virtual ~Recommender() = default;

  virtual std::string name() const = 0;

  // Raw scores aligned with `candidates`.
  virtual std::vector<double> Score(
      const UserHistory& history,
      std::span<const std::string> candidates) const = 0;

  // True when Score already yields click probabilities in (0, 1); otherwise
  // callers min-max scale the raw scores.
  virtual bool scores_are_probabilities() const { return false; }
};

// (x - min) / (max - min); every output is 0.5 when max == min. Throws
// EmptyInput.
std::vector<double> MinMaxScale(std::span<const double> scores);

// Orders by descending score, ties by ascending article id.
std::vector<ScoredArticle> RankByScore(std::span<const std::string> ids,
                                       std::span<const double> scores);

// Corpus articles not in the history, ascending by id.
std::vector<std::string> CandidatePool(const Corpus& corpus,
                                       const UserHistory& history);

// Cosine scoring of candidates against the history, sorted as RankByScore.
std::vector<ScoredArticle> ScoreCandidates(
    const UserHistory& history, std::span<const std::string> candidates,
    const VectorTable& vectors,
    HistoryAggregation aggregation = HistoryAggregation::kMeanProfile);

// Top-k over every corpus article outside the history. Click scores are
// computed over the full candidate list before selection. Throws
// InsufficientCandidates when fewer than k candidates remain.
std::vector<Recommendation> RecommendTopK(const Recommender& recommender,
                                          const UserHistory& history,
                                          const Corpus& corpus,
                                          std::size_t k = kDefaultTopK);

// Same, over an explicit candidate list (history articles are dropped).
std::vector<Recommendation> RecommendTopKFrom(
    const Recommender& recommender, const UserHistory& history,
    std::span<const std::string> candidates, std::size_t k = kDefaultTopK);

// Vector-space recommender over one VectorTable (TF-IDF, averaged word or
// sentence embeddings).
class TextRecommender : public Recommender {
 public:
  TextRecommender(std::string name, std::shared_ptr<const VectorTable> vectors,
                  HistoryAggregation aggregation =
                      HistoryAggregation::kMeanProfile);

  std::string name() const override { return name_; }
  std::vector<double> Score(
      const UserHistory& history,
      std::span<const std::string> candidates) const override;

  const VectorTable& vectors() const { return *vectors_; }

 private:
  std::string name_;
  std::shared_ptr<const VectorTable> vectors_;
  HistoryAggregation aggregation_;
};

// Uniform scores in [0, 1), deterministic per (seed, user, history length).
class RandomRecommender : public Recommender {
 public:
  explicit RandomRecommender(std::uint64_t seed) : seed_(seed) {}

  std::string name() const override { return "random"; }
  std::vector<double> Score(
      const UserHistory& history,
      std::span<const std::string> candidates) const override;
  bool scores_are_probabilities() const override { return true; }

 private:
  std::uint64_t seed_;
};

}  // namespace biasaudit

#endif  // BIASAUDIT_RECOMMENDERS_RECOMMENDER_H_

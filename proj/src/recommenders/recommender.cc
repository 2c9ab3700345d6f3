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


#include "biasaudit/recommenders/recommender.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "biasaudit/common/error.h"
#include "biasaudit/common/random.h"

namespace biasaudit {

std::vector<double> MinMaxScale(std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "min-max scale");
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(scores.size(), 0.5);
  if (range > 0.0) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      out[i] = std::clamp((scores[i] - min) / range, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<ScoredArticle> RankByScore(std::span<const std::string> ids,
                                       std::span<const double> scores) {
  if (ids.size() != scores.size()) {
    throw Error(ErrorCode::kLengthMismatch, "ids vs scores");
  }
  std::vector<ScoredArticle> ranked;
  ranked.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ranked.push_back({ids[i], scores[i]});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const ScoredArticle& a, const ScoredArticle& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.article_id < b.article_id;
            });
  return ranked;
}

std::vector<std::string> CandidatePool(const Corpus& corpus,
                                       const UserHistory& history) {
  const std::unordered_set<std::string> seen(history.article_ids.begin(),
                                             history.article_ids.end());
  std::vector<std::string> pool;
  pool.reserve(corpus.size());
  for (auto& id : corpus.SortedIds()) {
    if (!seen.contains(id)) pool.push_back(std::move(id));
  }
  return pool;
}

std::vector<ScoredArticle> ScoreCandidates(
    const UserHistory& history, std::span<const std::string> candidates,
    const VectorTable& vectors, HistoryAggregation aggregation) {
  const auto scores =
      vectors.Similarities(history.article_ids, candidates, aggregation);
  return RankByScore(candidates, scores);
}

std::vector<Recommendation> RecommendTopKFrom(
    const Recommender& recommender, const UserHistory& history,
    std::span<const std::string> candidates, std::size_t k) {
  const std::unordered_set<std::string> seen(history.article_ids.begin(),
                                             history.article_ids.end());
  std::vector<std::string> pool;
  pool.reserve(candidates.size());
  for (const auto& id : candidates) {
    if (!seen.contains(id)) pool.push_back(id);
  }
  if (k == 0 || pool.size() < k) {
    throw Error(ErrorCode::kInsufficientCandidates,
                "need " + std::to_string(k) + " candidates, have " +
                    std::to_string(pool.size()));
  }
  const std::vector<double> raw = recommender.Score(history, pool);
  const std::vector<double> click = recommender.scores_are_probabilities()
                                        ? raw
                                        : MinMaxScale(raw);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (raw[a] != raw[b]) return raw[a] > raw[b];
                      return pool[a] < pool[b];
                    });
  std::vector<Recommendation> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = order[r];
    out.push_back({pool[i], raw[i], click[i], static_cast<int>(r + 1)});
  }
  return out;
}

std::vector<Recommendation> RecommendTopK(const Recommender& recommender,
                                          const UserHistory& history,
                                          const Corpus& corpus,
                                          std::size_t k) {
  const auto pool = CandidatePool(corpus, history);
  return RecommendTopKFrom(recommender, history, pool, k);
}

TextRecommender::TextRecommender(std::string name,
                                 std::shared_ptr<const VectorTable> vectors,
                                 HistoryAggregation aggregation)
    : name_(std::move(name)),
      vectors_(std::move(vectors)),
      aggregation_(aggregation) {}

std::vector<double> TextRecommender::Score(
    const UserHistory& history, std::span<const std::string> candidates) const {
  return vectors_->Similarities(history.article_ids, candidates, aggregation_);
}

std::vector<double> RandomRecommender::Score(
    const UserHistory& history, std::span<const std::string> candidates) const {
  Rng rng = DeriveRng(seed_ ^ MixSeed(history.article_ids.size()),
                      history.user_id);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> scores(candidates.size());
  for (double& s : scores) s = uniform(rng);
  return scores;
}

}  // namespace biasaudit

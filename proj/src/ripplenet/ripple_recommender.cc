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


#include "biasaudit/ripplenet/ripple_recommender.h"

#include "biasaudit/common/error.h"

namespace biasaudit::ripple {

RippleRecommender::RippleRecommender(std::shared_ptr<const RippleModel> model,
                                     std::shared_ptr<const Corpus> corpus,
                                     std::shared_ptr<const KnowledgeGraph> kg)
    : model_(std::move(model)), corpus_(std::move(corpus)), kg_(std::move(kg)) {
  if (!model_->CompatibleWith(*kg_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "model vocabularies do not match the knowledge graph");
  }
  items_.reserve(corpus_->size());
  for (const NewsArticle& a : corpus_->articles()) {
    items_.push_back(ItemEmbedding(a, *model_));
  }
}

std::vector<double> RippleRecommender::Score(
    const UserHistory& history, std::span<const std::string> candidates) const {
  Rng rng = DeriveRng(model_->config().rng_seed, history.user_id);
  const RippleSet ripple =
      BuildRippleSet(history, *corpus_, *kg_, model_->config(), rng);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& id : candidates) {
    const auto idx = corpus_->IndexOf(id);
    if (!idx) throw Error(ErrorCode::kUnknownArticle, id);
    scores.push_back(PredictClick(ripple, items_[*idx], *model_));
  }
  return scores;
}

}  // namespace biasaudit::ripple

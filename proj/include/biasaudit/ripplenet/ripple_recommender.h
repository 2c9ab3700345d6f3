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


#ifndef BIASAUDIT_RIPPLENET_RIPPLE_RECOMMENDER_H_
#define BIASAUDIT_RIPPLENET_RIPPLE_RECOMMENDER_H_

#include <memory>
#include <string>
#include <vector>

#include "biasaudit/recommenders/recommender.h"
#include "biasaudit/ripplenet/model.h"

namespace biasaudit::ripple {

// Click-probability recommender over a trained model. The user's ripple
// set is rebuilt from the given history with the stream
// DeriveRng(model.config().rng_seed, user_id), matching training.
class RippleRecommender : public Recommender {
 public:
  // Throws InvalidArgument if the model does not match the graph.
  RippleRecommender(std::shared_ptr<const RippleModel> model,
                    std::shared_ptr<const Corpus> corpus,
                    std::shared_ptr<const KnowledgeGraph> kg);

  std::string name() const override { return "ripplenet"; }
  std::vector<double> Score(
      const UserHistory& history,
      std::span<const std::string> candidates) const override;
  bool scores_are_probabilities() const override { return true; }

  const RippleModel& model() const { return *model_; }

 private:
  std::shared_ptr<const RippleModel> model_;
  std::shared_ptr<const Corpus> corpus_;
  std::shared_ptr<const KnowledgeGraph> kg_;
  // Item embeddings in corpus order.
  std::vector<std::vector<double>> items_;
};

}  // namespace biasaudit::ripple

#endif  // BIASAUDIT_RIPPLENET_RIPPLE_RECOMMENDER_H_

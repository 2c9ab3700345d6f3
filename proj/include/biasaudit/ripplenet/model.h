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


#ifndef BIASAUDIT_RIPPLENET_MODEL_H_
#define BIASAUDIT_RIPPLENET_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biasaudit/common/random.h"
#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/interactions.h"
#include "biasaudit/corpus/knowledge_graph.h"

namespace biasaudit::ripple {

enum class Optimizer { kSgd, kAdam };

struct RippleConfig {
  int hops = 1;
  int ripple_size = 16;
  int dim = 48;
  double kg_weight = 0.03;    // lambda_2
  double l2_weight = 1e-5;    // lambda_1
  double learning_rate = 0.02;
  int epochs = 10;
  int batch_size = 32;
  std::uint64_t rng_seed = 0;
  Optimizer optimizer = Optimizer::kSgd;

  // Throws InvalidArgument.
  void Validate() const;
};

// Per-hop parallel (head, relation, tail) index lists.
struct RippleHop {
  std::vector<std::uint32_t> heads;
  std::vector<std::uint32_t> relations;
  std::vector<std::uint32_t> tails;

  std::size_t size() const { return heads.size(); }
};

struct RippleSet {
  std::vector<RippleHop> hops;

  std::size_t num_triples() const;
  bool empty() const { return num_triples() == 0; }
};

// Seeds are the KG-resolvable entities of the history articles (unknown
// entity ids are skipped and counted in `skipped_entities`). Each hop draws
// `ripple_size` triples uniformly with replacement from the out-edges of
// the previous hop's tails (hop 1: of the seeds). A frontier without
// out-edges leaves that hop and all later hops empty.
RippleSet BuildRippleSet(const UserHistory& history, const Corpus& corpus,
                         const KnowledgeGraph& kg, const RippleConfig& config,
                         Rng& rng, std::size_t* skipped_entities = nullptr);

// Entity embeddings (|E| x d, row-major) and one d x d matrix per relation.
class RippleModel {
 public:
  RippleModel() = default;

  // Entries i.i.d. uniform in [-0.5/sqrt(d), 0.5/sqrt(d)], seeded from
  // config.rng_seed.
  static RippleModel Initialize(const KnowledgeGraph& kg,
                                const RippleConfig& config);
  static RippleModel Zeros(const KnowledgeGraph& kg, const RippleConfig& config);
  // Throws InvalidArgument on shape disagreement.
  static RippleModel FromParameters(RippleConfig config,
                                    std::vector<std::string> entity_names,
                                    std::vector<std::string> relation_names,
                                    std::vector<double> entity_embeddings,
                                    std::vector<double> relation_embeddings);

  // Copy carrying `config`; throws InvalidArgument if the dimension differs.
  RippleModel WithConfig(const RippleConfig& config) const;

  const RippleConfig& config() const { return config_; }
  std::size_t dim() const { return static_cast<std::size_t>(config_.dim); }
  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }
  const Vocabulary& entities() const { return entities_; }
  const Vocabulary& relations() const { return relations_; }

  std::span<const double> entity(std::uint32_t e) const {
    return std::span<const double>(entity_embeddings_).subspan(e * dim(), dim());
  }
  std::span<const double> relation(std::uint32_t r) const {
    return std::span<const double>(relation_embeddings_)
        .subspan(r * dim() * dim(), dim() * dim());
  }

  std::span<const double> entity_embeddings() const {
    return entity_embeddings_;
  }
  std::span<const double> relation_embeddings() const {
    return relation_embeddings_;
  }
  std::span<double> mutable_entity_embeddings() { return entity_embeddings_; }
  std::span<double> mutable_relation_embeddings() {
    return relation_embeddings_;
  }

  // KG indices of the article's entities known to this model.
  std::vector<std::uint32_t> ResolveEntities(const NewsArticle& article,
                                             std::size_t* skipped = nullptr) const;

  // True when vocabularies match the graph's exactly.
  bool CompatibleWith(const KnowledgeGraph& kg) const;

  bool AllFinite() const;

 private:
  RippleConfig config_;
  Vocabulary entities_;
  Vocabulary relations_;
  std::vector<double> entity_embeddings_;
  std::vector<double> relation_embeddings_;
};

// Mean entity embedding over the resolved entities; zero vector if none.
std::vector<double> ItemEmbedding(std::span<const std::uint32_t> entities,
                                  const RippleModel& model);
std::vector<double> ItemEmbedding(const NewsArticle& article,
                                  const RippleModel& model);

// Per hop: logits_i = item^T R_i head_i, p = softmax(logits),
// o = sum_i p_i tail_i; u = sum_h o_h; returns sigmoid(u^T item). An empty
// ripple set gives u = 0 and therefore exactly 0.5.
double PredictClick(const RippleSet& ripple, std::span<const double> item,
                    const RippleModel& model);

// Per-hop attention weights, exposed for inspection and tests.
std::vector<std::vector<double>> AttentionWeights(const RippleSet& ripple,
                                                  std::span<const double> item,
                                                  const RippleModel& model);

double Sigmoid(double x);

}  // namespace biasaudit::ripple

#endif  // BIASAUDIT_RIPPLENET_MODEL_H_

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


#include "biasaudit/ripplenet/model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "biasaudit/common/error.h"
#include "biasaudit/simd/kernels.h"

namespace biasaudit::ripple {
namespace {

void Softmax(std::span<double> logits) {
  if (logits.empty()) return;
  const double max = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& x : logits) {
    x = std::exp(x - max);
    sum += x;
  }
  for (double& x : logits) x /= sum;
}

Vocabulary CopyVocabulary(const Vocabulary& v) {
  Vocabulary out;
  for (const auto& name : v.names()) out.Intern(name);
  return out;
}

}  // namespace

void RippleConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(hops >= 1, "hops must be positive");
  require(ripple_size >= 1, "ripple_size must be positive");
  require(dim >= 1, "dim must be positive");
  require(kg_weight >= 0.0, "kg_weight must be nonnegative");
  require(l2_weight >= 0.0, "l2_weight must be nonnegative");
  require(learning_rate > 0.0, "learning_rate must be positive");
  require(epochs >= 1, "epochs must be positive");
  require(batch_size >= 1, "batch_size must be positive");
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::size_t RippleSet::num_triples() const {
  std::size_t n = 0;
  for (const auto& hop : hops) n += hop.size();
  return n;
}

RippleSet BuildRippleSet(const UserHistory& history, const Corpus& corpus,
                         const KnowledgeGraph& kg, const RippleConfig& config,
                         Rng& rng, std::size_t* skipped_entities) {
  RippleSet ripple;
  ripple.hops.resize(static_cast<std::size_t>(config.hops));
  std::set<std::uint32_t> frontier;
  for (const auto& id : history.article_ids) {
    for (const auto& entity : corpus.At(id).entity_ids) {
      if (auto idx = kg.entities().Find(entity)) {
        frontier.insert(*idx);
      } else if (skipped_entities != nullptr) {
        ++*skipped_entities;
      }
    }
  }
  for (RippleHop& hop : ripple.hops) {
    std::vector<Triple> edges;
    for (std::uint32_t head : frontier) {
      for (const Edge& e : kg.OutEdges(head)) {
        edges.push_back({head, e.relation, e.tail});
      }
    }
    if (edges.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::set<std::uint32_t> next;
    for (int i = 0; i < config.ripple_size; ++i) {
      const Triple& t = edges[pick(rng)];
      hop.heads.push_back(t.head);
      hop.relations.push_back(t.relation);
      hop.tails.push_back(t.tail);
      next.insert(t.tail);
    }
    frontier = std::move(next);
  }
  return ripple;
}

RippleModel RippleModel::Zeros(const KnowledgeGraph& kg,
                               const RippleConfig& config) {
  config.Validate();
  RippleModel m;
  m.config_ = config;
  m.entities_ = CopyVocabulary(kg.entities());
  m.relations_ = CopyVocabulary(kg.relations());
  const std::size_t d = m.dim();
  m.entity_embeddings_.assign(m.entities_.size() * d, 0.0);
  m.relation_embeddings_.assign(m.relations_.size() * d * d, 0.0);
  return m;
}

RippleModel RippleModel::Initialize(const KnowledgeGraph& kg,
                                    const RippleConfig& config) {
  RippleModel m = Zeros(kg, config);
  const double bound = 0.5 / std::sqrt(static_cast<double>(config.dim));
  Rng rng = DeriveRng(config.rng_seed, std::string_view("ripple-init"));
  std::uniform_real_distribution<double> uniform(-bound, bound);
  for (double& x : m.entity_embeddings_) x = uniform(rng);
  for (double& x : m.relation_embeddings_) x = uniform(rng);
  return m;
}

RippleModel RippleModel::FromParameters(
    RippleConfig config, std::vector<std::string> entity_names,
    std::vector<std::string> relation_names,
    std::vector<double> entity_embeddings,
    std::vector<double> relation_embeddings) {
  config.Validate();
  RippleModel m;
  m.config_ = config;
  for (const auto& name : entity_names) m.entities_.Intern(name);
  for (const auto& name : relation_names) m.relations_.Intern(name);
  const std::size_t d = m.dim();
  if (m.entities_.size() != entity_names.size() ||
      m.relations_.size() != relation_names.size()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate vocabulary entries");
  }
  if (entity_embeddings.size() != m.entities_.size() * d ||
      relation_embeddings.size() != m.relations_.size() * d * d) {
    throw Error(ErrorCode::kInvalidArgument,
                "parameter arrays disagree with vocabulary sizes and dim");
  }
  m.entity_embeddings_ = std::move(entity_embeddings);
  m.relation_embeddings_ = std::move(relation_embeddings);
  if (!m.AllFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite parameters");
  }
  return m;
}

RippleModel RippleModel::WithConfig(const RippleConfig& config) const {
  config.Validate();
  if (config.dim != config_.dim) {
    throw Error(ErrorCode::kInvalidArgument, "model dimension differs");
  }
  RippleModel copy = *this;
  copy.config_ = config;
  return copy;
}

std::vector<std::uint32_t> RippleModel::ResolveEntities(
    const NewsArticle& article, std::size_t* skipped) const {
  std::vector<std::uint32_t> out;
  for (const auto& e : article.entity_ids) {
    if (auto idx = entities_.Find(e)) {
      out.push_back(*idx);
    } else if (skipped != nullptr) {
      ++*skipped;
    }
  }
  return out;
}

bool RippleModel::CompatibleWith(const KnowledgeGraph& kg) const {
  return entities_.names() == kg.entities().names() &&
         relations_.names() == kg.relations().names();
}

bool RippleModel::AllFinite() const {
  auto finite = [](double x) { return std::isfinite(x); };
  return std::all_of(entity_embeddings_.begin(), entity_embeddings_.end(),
                     finite) &&
         std::all_of(relation_embeddings_.begin(), relation_embeddings_.end(),
                     finite);
}

std::vector<double> ItemEmbedding(std::span<const std::uint32_t> entities,
                                  const RippleModel& model) {
  std::vector<double> v(model.dim(), 0.0);
  if (entities.empty()) return v;
  for (std::uint32_t e : entities) simd::Axpy(1.0, model.entity(e), v);
  simd::Scale(1.0 / static_cast<double>(entities.size()), v);
  return v;
}

std::vector<double> ItemEmbedding(const NewsArticle& article,
                                  const RippleModel& model) {
  const auto entities = model.ResolveEntities(article);
  return ItemEmbedding(entities, model);
}

std::vector<std::vector<double>> AttentionWeights(const RippleSet& ripple,
                                                  std::span<const double> item,
                                                  const RippleModel& model) {
  const std::size_t d = model.dim();
  std::vector<double> rh(d);
  std::vector<std::vector<double>> weights;
  weights.reserve(ripple.hops.size());
  for (const RippleHop& hop : ripple.hops) {
    std::vector<double> logits(hop.size());
    for (std::size_t i = 0; i < hop.size(); ++i) {
      simd::MatVec(model.relation(hop.relations[i]), model.entity(hop.heads[i]),
                   rh);
      logits[i] = simd::Dot(item, rh);
    }
    Softmax(logits);
    weights.push_back(std::move(logits));
  }
  return weights;
}

double PredictClick(const RippleSet& ripple, std::span<const double> item,
                    const RippleModel& model) {
  const auto weights = AttentionWeights(ripple, item, model);
  std::vector<double> user(model.dim(), 0.0);
  for (std::size_t h = 0; h < ripple.hops.size(); ++h) {
    const RippleHop& hop = ripple.hops[h];
    for (std::size_t i = 0; i < hop.size(); ++i) {
      simd::Axpy(weights[h][i], model.entity(hop.tails[i]), user);
    }
  }
  return Sigmoid(simd::Dot(user, item));
}

}  // namespace biasaudit::ripple

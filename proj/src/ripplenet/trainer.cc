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


#include "biasaudit/ripplenet/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "biasaudit/common/error.h"
#include "biasaudit/simd/kernels.h"

namespace biasaudit::ripple {
namespace {

// log(1 + e^z), stable for large |z|.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

std::span<double> Row(std::vector<double>& flat, std::size_t index,
                      std::size_t width) {
  return std::span<double>(flat).subspan(index * width, width);
}

class AdamState {
 public:
  explicit AdamState(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}

  void Step(double lr, std::span<const double> grad, std::span<double> params,
            int t) {
    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEps = 1e-8;
    const double c1 = 1.0 - std::pow(kBeta1, t);
    const double c2 = 1.0 - std::pow(kBeta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      params[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
    }
  }

 private:
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace

LossBreakdown ComputeLoss(const RippleModel& model,
                          std::span<const TrainingExample> batch,
                          ModelGradients* gradients) {
  const RippleConfig& config = model.config();
  const std::size_t d = model.dim();
  const std::size_t d2 = d * d;
  const double batch_size = static_cast<double>(std::max<std::size_t>(batch.size(), 1));

  std::size_t total_triples = 0;
  for (const auto& ex : batch) total_triples += ex.ripple->num_triples();
  const double kg_scale =
      total_triples > 0 ? 1.0 / static_cast<double>(total_triples) : 0.0;

  if (gradients != nullptr) {
    gradients->entity.assign(model.entity_embeddings().size(), 0.0);
    gradients->relation.assign(model.relation_embeddings().size(), 0.0);
  }

  double bce_sum = 0.0;
  double kg_sum = 0.0;
  std::vector<double> user(d);
  std::vector<double> d_user(d);
  std::vector<double> d_item(d);
  std::vector<double> scratch(d);
  std::vector<double> rh;      // R_i h_i for every triple, concatenated
  std::vector<double> probs;   // attention weights, concatenated over hops

  for (const TrainingExample& ex : batch) {
    const RippleSet& ripple = *ex.ripple;
    const std::vector<double> item = ItemEmbedding(ex.item_entities, model);
    const std::size_t n_triples = ripple.num_triples();
    rh.assign(n_triples * d, 0.0);
    probs.assign(n_triples, 0.0);
    std::fill(user.begin(), user.end(), 0.0);

    std::size_t offset = 0;
    for (const RippleHop& hop : ripple.hops) {
      if (hop.size() == 0) continue;
      double max_logit = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < hop.size(); ++i) {
        auto rh_i = Row(rh, offset + i, d);
        simd::MatVec(model.relation(hop.relations[i]),
                     model.entity(hop.heads[i]), rh_i);
        probs[offset + i] = simd::Dot(item, rh_i);
        max_logit = std::max(max_logit, probs[offset + i]);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < hop.size(); ++i) {
        probs[offset + i] = std::exp(probs[offset + i] - max_logit);
        norm += probs[offset + i];
      }
      for (std::size_t i = 0; i < hop.size(); ++i) {
        probs[offset + i] /= norm;
        simd::Axpy(probs[offset + i], model.entity(hop.tails[i]), user);
      }
      offset += hop.size();
    }

    const double z = simd::Dot(user, item);
    const double y = static_cast<double>(ex.label);
    bce_sum += Softplus(z) - y * z;

    // Knowledge-graph term: sigmoid(t^T R h) for every triple.
    offset = 0;
    for (const RippleHop& hop : ripple.hops) {
      for (std::size_t i = 0; i < hop.size(); ++i) {
        const auto rh_i = Row(rh, offset + i, d);
        const double q = simd::Dot(model.entity(hop.tails[i]), rh_i);
        const double sq = Sigmoid(q);
        kg_sum += sq;
        if (gradients == nullptr || config.kg_weight == 0.0) continue;
        const double c = -config.kg_weight * kg_scale * sq * (1.0 - sq);
        simd::Axpy(c, rh_i, Row(gradients->entity, hop.tails[i], d));
        simd::AddOuter(c, model.entity(hop.tails[i]), model.entity(hop.heads[i]),
                       Row(gradients->relation, hop.relations[i], d2));
        simd::MatTVec(model.relation(hop.relations[i]),
                      model.entity(hop.tails[i]), scratch);
        simd::Axpy(c, scratch, Row(gradients->entity, hop.heads[i], d));
      }
      offset += hop.size();
    }

    if (gradients == nullptr) continue;

    // Click term.
    const double g_z = (Sigmoid(z) - y) / batch_size;
    std::fill(d_user.begin(), d_user.end(), 0.0);
    simd::Axpy(g_z, item, d_user);
    std::fill(d_item.begin(), d_item.end(), 0.0);
    simd::Axpy(g_z, user, d_item);

    offset = 0;
    for (const RippleHop& hop : ripple.hops) {
      if (hop.size() == 0) continue;
      // dL/dp_i = tail_i . d_user; softmax backward.
      double weighted = 0.0;
      std::vector<double> d_prob(hop.size());
      for (std::size_t i = 0; i < hop.size(); ++i) {
        d_prob[i] = simd::Dot(model.entity(hop.tails[i]), d_user);
        weighted += probs[offset + i] * d_prob[i];
        simd::Axpy(probs[offset + i], d_user,
                   Row(gradients->entity, hop.tails[i], d));
      }
      for (std::size_t i = 0; i < hop.size(); ++i) {
        const double d_logit = probs[offset + i] * (d_prob[i] - weighted);
        if (d_logit == 0.0) continue;
        simd::Axpy(d_logit, Row(rh, offset + i, d), d_item);
        simd::AddOuter(d_logit, item, model.entity(hop.heads[i]),
                       Row(gradients->relation, hop.relations[i], d2));
        simd::MatTVec(model.relation(hop.relations[i]), item, scratch);
        simd::Axpy(d_logit, scratch, Row(gradients->entity, hop.heads[i], d));
      }
      offset += hop.size();
    }

    if (!ex.item_entities.empty()) {
      const double share = 1.0 / static_cast<double>(ex.item_entities.size());
      for (std::uint32_t e : ex.item_entities) {
        simd::Axpy(share, d_item, Row(gradients->entity, e, d));
      }
    }
  }

  LossBreakdown loss;
  loss.bce = batch.empty() ? 0.0 : bce_sum / batch_size;
  loss.kg = -kg_sum * kg_scale;
  loss.l2 = simd::SquaredNorm(model.entity_embeddings()) +
            simd::SquaredNorm(model.relation_embeddings());
  loss.total = loss.bce + config.kg_weight * loss.kg + config.l2_weight * loss.l2;

  if (gradients != nullptr && config.l2_weight != 0.0) {
    simd::Axpy(2.0 * config.l2_weight, model.entity_embeddings(),
               gradients->entity);
    simd::Axpy(2.0 * config.l2_weight, model.relation_embeddings(),
               gradients->relation);
  }
  return loss;
}

TrainingData PrepareTrainingData(const KnowledgeGraph& kg,
                                 const InteractionLog& log,
                                 const Corpus& corpus,
                                 const RippleConfig& config) {
  config.Validate();
  bool has_positive = false;
  bool has_negative = false;
  for (const Interaction& r : log.records) {
    if (r.split != Split::kTrain) continue;
    (r.label == 1 ? has_positive : has_negative) = true;
  }
  if (!has_negative) {
    throw Error(ErrorCode::kNoNegatives, "training split has no label-0 records");
  }
  if (!has_positive) {
    throw Error(ErrorCode::kSingleClass, "training split has no label-1 records");
  }

  TrainingData data;
  const auto histories = BuildHistories(
      log, [](const Interaction& r) { return r.split == Split::kTrain; });
  for (const auto& [user, history] : histories) {
    Rng rng = DeriveRng(config.rng_seed, user);
    data.ripples.emplace(user, BuildRippleSet(history, corpus, kg, config, rng,
                                              &data.skipped_entities));
  }
  for (const Interaction& r : log.records) {
    if (r.split != Split::kTrain) continue;
    auto it = data.ripples.find(r.user_id);
    if (it == data.ripples.end()) {
      ++data.cold_records;
      continue;
    }
    TrainingExample ex;
    ex.ripple = &it->second;
    ex.label = r.label;
    for (const auto& e : corpus.At(r.article_id).entity_ids) {
      if (auto idx = kg.entities().Find(e)) {
        ex.item_entities.push_back(*idx);
      } else {
        ++data.skipped_entities;
      }
    }
    data.examples.push_back(std::move(ex));
  }
  return data;
}

TrainResult Train(const KnowledgeGraph& kg, const TrainingData& data,
                  const RippleConfig& config, const RippleModel* initial) {
  config.Validate();
  TrainResult result;
  result.model = initial != nullptr ? initial->WithConfig(config)
                                    : RippleModel::Initialize(kg, config);
  if (!result.model.CompatibleWith(kg)) {
    throw Error(ErrorCode::kInvalidArgument,
                "model vocabularies do not match the knowledge graph");
  }
  RippleModel& model = result.model;
  const std::size_t n = data.examples.size();
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "no training examples");

  Rng rng = DeriveRng(config.rng_seed, std::string_view("ripple-train"));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<TrainingExample> batch;
  ModelGradients grads;
  AdamState adam_entity(model.entity_embeddings().size());
  AdamState adam_relation(model.relation_embeddings().size());
  int step = 0;
  const auto batch_size = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    EpochLoss epoch_loss;
    epoch_loss.epoch = epoch;
    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t end = std::min(n, start + batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(data.examples[order[i]]);
      }
      const LossBreakdown loss = ComputeLoss(model, batch, &grads);
      if (!std::isfinite(loss.total)) {
        throw Error(ErrorCode::kDivergenceDetected,
                    "non-finite loss in epoch " + std::to_string(epoch));
      }
      const double w = static_cast<double>(end - start) / static_cast<double>(n);
      epoch_loss.bce += w * loss.bce;
      epoch_loss.kg += w * loss.kg;
      epoch_loss.l2 += w * loss.l2;
      epoch_loss.total += w * loss.total;

      ++step;
      if (config.optimizer == Optimizer::kAdam) {
        adam_entity.Step(config.learning_rate, grads.entity,
                         model.mutable_entity_embeddings(), step);
        adam_relation.Step(config.learning_rate, grads.relation,
                           model.mutable_relation_embeddings(), step);
      } else {
        simd::Axpy(-config.learning_rate, grads.entity,
                   model.mutable_entity_embeddings());
        simd::Axpy(-config.learning_rate, grads.relation,
                   model.mutable_relation_embeddings());
      }
    }
    if (!model.AllFinite()) {
      throw Error(ErrorCode::kDivergenceDetected,
                  "non-finite parameters after epoch " + std::to_string(epoch));
    }
    result.trace.push_back(epoch_loss);
  }
  return result;
}

TrainResult Train(const KnowledgeGraph& kg, const InteractionLog& log,
                  const Corpus& corpus, const RippleConfig& config) {
  const TrainingData data = PrepareTrainingData(kg, log, corpus, config);
  return Train(kg, data, config);
}

void WriteTrainingLog(std::span<const EpochLoss> trace, std::ostream& out) {
  out << "epoch,bce,kg_loss,l2,total\n";
  const auto precision = out.precision(10);
  for (const EpochLoss& e : trace) {
    out << e.epoch << ',' << e.bce << ',' << e.kg << ',' << e.l2 << ','
        << e.total << '\n';
  }
  out.precision(precision);
}

}  // namespace biasaudit::ripple

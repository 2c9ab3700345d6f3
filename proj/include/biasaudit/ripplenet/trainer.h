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


#ifndef BIASAUDIT_RIPPLENET_TRAINER_H_
#define BIASAUDIT_RIPPLENET_TRAINER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biasaudit/ripplenet/model.h"

namespace biasaudit::ripple {

struct TrainingExample {
  const RippleSet* ripple = nullptr;
  std::vector<std::uint32_t> item_entities;
  int label = 0;
};

// Unweighted loss components; total = bce + kg_weight * kg + l2_weight * l2.
struct LossBreakdown {
  double bce = 0.0;  // mean over the batch
  // -(1/T) sum sigmoid(tail^T R head) over the T triples of the batch's
  // ripple sets; 0 when T == 0.
  double kg = 0.0;
  double l2 = 0.0;  // squared norm of every parameter
  double total = 0.0;
};

struct ModelGradients {
  std::vector<double> entity;
  std::vector<double> relation;
};

// Loss of `batch` under `model`, and, when `gradients` is non-null, its
// exact gradient with respect to every parameter (overwritten, sized to the
// model).
LossBreakdown ComputeLoss(const RippleModel& model,
                          std::span<const TrainingExample> batch,
                          ModelGradients* gradients = nullptr);

struct EpochLoss {
  int epoch = 0;
  double bce = 0.0;
  double kg = 0.0;
  double l2 = 0.0;
  double total = 0.0;
};

// Examples point into `ripples`; the struct is move-only so they stay valid.
struct TrainingData {
  TrainingData() = default;
  TrainingData(const TrainingData&) = delete;
  TrainingData& operator=(const TrainingData&) = delete;
  TrainingData(TrainingData&&) = default;
  TrainingData& operator=(TrainingData&&) = default;

  // Ripple sets keyed by user id, built from the user's training clicks.
  std::map<std::string, RippleSet> ripples;
  std::vector<TrainingExample> examples;
  std::size_t cold_records = 0;      // records of users without clicks
  std::size_t skipped_entities = 0;  // entity ids absent from the KG
};

// Builds examples from every Train-split record. Ripple sets use the
// per-user stream DeriveRng(config.rng_seed, user_id), so a recommender
// configured with the same seed reproduces them from the same history.
// Throws NoNegatives when the split lacks label-0 records and SingleClass
// when it lacks label-1 records.
TrainingData PrepareTrainingData(const KnowledgeGraph& kg,
                                 const InteractionLog& log,
                                 const Corpus& corpus,
                                 const RippleConfig& config);

struct TrainResult {
  RippleModel model;
  std::vector<EpochLoss> trace;  // one entry per epoch, batch-weighted means
};

// Mini-batch training from `initial` (or a fresh Initialize when null).
// Deterministic for a fixed config.rng_seed. Throws DivergenceDetected when
// the loss or any parameter becomes non-finite.
TrainResult Train(const KnowledgeGraph& kg, const TrainingData& data,
                  const RippleConfig& config,
                  const RippleModel* initial = nullptr);

// Convenience: PrepareTrainingData followed by Train.
TrainResult Train(const KnowledgeGraph& kg, const InteractionLog& log,
                  const Corpus& corpus, const RippleConfig& config);

// CSV with header "epoch,bce,kg_loss,l2,total".
void WriteTrainingLog(std::span<const EpochLoss> trace, std::ostream& out);

}  // namespace biasaudit::ripple

#endif  // BIASAUDIT_RIPPLENET_TRAINER_H_

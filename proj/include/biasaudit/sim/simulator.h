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


#ifndef BIASAUDIT_SIM_SIMULATOR_H_
#define BIASAUDIT_SIM_SIMULATOR_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biasaudit/bias/bias.h"
#include "biasaudit/common/random.h"
#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/interactions.h"
#include "biasaudit/recommenders/recommender.h"

namespace biasaudit {

// Name of the assignment slot served by uniform sampling instead of a
// recommender.
inline constexpr std::string_view kRandomAssignment = "random";

struct SimConfig {
  std::size_t n_users = 100;
  BiasKind latent_kind = BiasKind::Stance(QuestionId("Q1"));
  // Latent bias drawn uniformly from [beta_low, beta_high].
  double beta_low = -1.0;
  double beta_high = 1.0;
  double temperature = 0.5;
  int rounds = 4;
  int preview_size = 6;
  std::vector<std::pair<std::string, double>> assignment = {
      {"tfidf", 786.0}, {"word2vec", 211.0}, {"docembed", 209.0},
      {std::string(kRandomAssignment), 211.0}};
  std::uint64_t rng_seed = 0;
  int jobs = 1;

  // Throws InvalidArgument.
  void Validate() const;
};

struct SimulatedUser {
  std::string user_id;
  double beta = 0.0;
  std::string recommender;
};

struct SimulationResult {
  InteractionLog log;  // splits unassigned
  std::vector<SimulatedUser> users;
};

// Index of the chosen preview: P(j) proportional to exp(beta * score_j / tau).
std::size_t ChooseFromPreview(std::span<const double> scores, double beta,
                              double temperature, Rng& rng);

// Each user draws beta and a recommender slot, then plays `rounds` rounds:
// a preview (uniformly random in round one and for the random slot, else
// the recommender's top preview_size over the unseen articles), one choice,
// and preview_size records. Previewed articles leave the user's pool, so no
// (user, article) pair repeats. Per-user streams are DeriveRng(seed, index).
// Throws CorpusTooSmall when the corpus has fewer than rounds * preview_size
// articles; InvalidArgument when a weighted slot has no recommender.
SimulationResult Simulate(
    const Corpus& corpus,
    const std::map<std::string, const Recommender*>& recommenders,
    const SimConfig& config);

// The latent bias the user was simulated with.
inline double GroundTruthBias(const SimulatedUser& user) { return user.beta; }

// users.json: latent kind, temperature and one object per user.
std::string UsersToJson(std::span<const SimulatedUser> users,
                        const SimConfig& config);

}  // namespace biasaudit

#endif  // BIASAUDIT_SIM_SIMULATOR_H_

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


#include "biasaudit/sim/simulator.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "biasaudit/common/error.h"
#include "biasaudit/common/parallel.h"
#include "fmt/format.h"
#include "json.hpp"

namespace biasaudit {
namespace {

struct UserRun {
  SimulatedUser user;
  std::vector<Interaction> records;
};

std::vector<std::string> RandomPreview(std::vector<std::string>& pool,
                                       std::size_t size, Rng& rng) {
  // Partial Fisher-Yates over the pool; the preview keeps draw order.
  std::vector<std::string> preview;
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
    preview.push_back(pool[i]);
  }
  return preview;
}

}  // namespace

void SimConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
  };
  require(n_users >= 1, "n_users must be positive");
  require(temperature > 0.0, "temperature must be positive");
  require(rounds >= 1, "rounds must be at least 1");
  require(preview_size >= 2, "preview_size must be at least 2");
  require(-1.0 <= beta_low && beta_low <= beta_high && beta_high <= 1.0,
          "beta range must satisfy -1 <= low <= high <= 1");
  double total = 0.0;
  for (const auto& [name, w] : assignment) {
    require(w >= 0.0 && std::isfinite(w), "assignment weights must be nonnegative");
    total += w;
  }
  require(total > 0.0, "assignment weights must not all be zero");
}

std::size_t ChooseFromPreview(std::span<const double> scores, double beta,
                              double temperature, Rng& rng) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "empty preview");
  std::vector<double> logits(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    logits[i] = beta * scores[i] / temperature;
  }
  const double max = *std::max_element(logits.begin(), logits.end());
  std::vector<double> weights(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weights[i] = std::exp(logits[i] - max);
  }
  std::discrete_distribution<std::size_t> choose(weights.begin(), weights.end());
  return choose(rng);
}

SimulationResult Simulate(
    const Corpus& corpus,
    const std::map<std::string, const Recommender*>& recommenders,
    const SimConfig& config) {
  config.Validate();
  const auto rounds = static_cast<std::size_t>(config.rounds);
  const auto preview_size = static_cast<std::size_t>(config.preview_size);
  if (corpus.size() < rounds * preview_size) {
    throw Error(ErrorCode::kCorpusTooSmall,
                fmt::format("{} articles cannot serve {} rounds of {} unseen "
                            "previews",
                            corpus.size(), rounds, preview_size));
  }
  std::vector<double> weights;
  for (const auto& [name, w] : config.assignment) {
    if (w > 0.0 && name != kRandomAssignment) {
      auto it = recommenders.find(name);
      if (it == recommenders.end() || it->second == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "no recommender supplied for assignment slot '" + name + "'");
      }
    }
    weights.push_back(w);
  }
  // Resolve the latent kind once so a bad question fails before simulating.
  ArticleBias(corpus.articles().front(), config.latent_kind);

  const std::vector<std::string> all_ids = corpus.SortedIds();
  const int width = static_cast<int>(std::to_string(config.n_users).size());
  std::vector<UserRun> runs(config.n_users);

  ParallelFor(config.n_users, config.jobs, [&](std::size_t index) {
    Rng rng = DeriveRng(config.rng_seed, static_cast<std::uint64_t>(index));
    UserRun& run = runs[index];
    run.user.user_id = fmt::format("u{:0{}}", index + 1, width);
    std::uniform_real_distribution<double> beta(config.beta_low, config.beta_high);
    run.user.beta = config.beta_low == config.beta_high ? config.beta_low : beta(rng);
    std::discrete_distribution<std::size_t> slot(weights.begin(), weights.end());
    run.user.recommender = config.assignment[slot(rng)].first;
    const bool random_slot = run.user.recommender == kRandomAssignment;
    const Recommender* recommender =
        random_slot ? nullptr : recommenders.at(run.user.recommender);

    std::vector<std::string> pool = all_ids;
    UserHistory history{run.user.user_id, {}};
    for (std::size_t round = 0; round < rounds; ++round) {
      std::vector<std::string> preview;
      if (round == 0 || random_slot) {
        preview = RandomPreview(pool, preview_size, rng);
      } else {
        std::sort(pool.begin(), pool.end());
        for (auto& rec : RecommendTopKFrom(*recommender, history, pool, preview_size)) {
          preview.push_back(std::move(rec.article_id));
        }
      }
      std::vector<double> scores;
      for (const auto& id : preview) {
        scores.push_back(ArticleBias(corpus.At(id), config.latent_kind));
      }
      const std::size_t choice =
          ChooseFromPreview(scores, run.user.beta, config.temperature, rng);
      for (std::size_t j = 0; j < preview.size(); ++j) {
        Interaction r;
        r.user_id = run.user.user_id;
        r.article_id = preview[j];
        r.label = j == choice ? 1 : 0;
        r.origin = j == choice ? Origin::kChosen : Origin::kNegativePreview;
        r.random_provenance = random_slot;
        run.records.push_back(std::move(r));
      }
      history.article_ids.push_back(preview[choice]);
      std::erase_if(pool, [&](const std::string& id) {
        return std::find(preview.begin(), preview.end(), id) != preview.end();
      });
    }
  });

  SimulationResult result;
  for (UserRun& run : runs) {
    result.users.push_back(std::move(run.user));
    for (auto& r : run.records) result.log.records.push_back(std::move(r));
  }
  return result;
}

std::string UsersToJson(std::span<const SimulatedUser> users,
                        const SimConfig& config) {
  nlohmann::ordered_json j;
  j["latent_kind"] = config.latent_kind.name();
  j["temperature"] = config.temperature;
  j["beta_range"] = {config.beta_low, config.beta_high};
  auto arr = nlohmann::ordered_json::array();
  for (const auto& u : users) {
    arr.push_back({{"user_id", u.user_id},
                   {"beta", u.beta},
                   {"recommender", u.recommender}});
  }
  j["users"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace biasaudit

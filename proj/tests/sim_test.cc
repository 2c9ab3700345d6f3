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


#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "biasaudit/bias/bias.h"
#include "biasaudit/bias/stats.h"
#include "biasaudit/recommenders/embedding.h"
#include "biasaudit/recommenders/recommender.h"
#include "biasaudit/recommenders/tfidf.h"
#include "biasaudit/sim/simulator.h"
#include "biasaudit/sim/synthetic.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace biasaudit {
namespace {

// Synthetic corpus and the three content recommenders, built once.
class SimWorld : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SyntheticCorpusConfig sc;
    sc.word_dim = 16;
    sc.sentence_dim = 16;
    sc.rng_seed = 4;
    data_ = new SyntheticData(GenerateSyntheticData(sc));
    tfidf_ = new TextRecommender(
        "tfidf", std::make_shared<const VectorTable>(TfidfVectorize(data_->corpus)));
    word2vec_ = new TextRecommender(
        "word2vec", std::make_shared<const VectorTable>(
                        EmbedAverageWords(data_->corpus, data_->words, 16)));
    docembed_ = new TextRecommender(
        "docembed", std::make_shared<const VectorTable>(EmbedAverageSentences(
                        data_->corpus, data_->sentences, 16)));
  }
  static void TearDownTestSuite() {
    delete tfidf_;
    delete word2vec_;
    delete docembed_;
    delete data_;
  }

  static std::map<std::string, const Recommender*> Recommenders() {
    return {{"tfidf", tfidf_}, {"word2vec", word2vec_}, {"docembed", docembed_}};
  }

  static SyntheticData* data_;
  static TextRecommender* tfidf_;
  static TextRecommender* word2vec_;
  static TextRecommender* docembed_;
};

SyntheticData* SimWorld::data_ = nullptr;
TextRecommender* SimWorld::tfidf_ = nullptr;
TextRecommender* SimWorld::word2vec_ = nullptr;
TextRecommender* SimWorld::docembed_ = nullptr;

TEST(ChooseFromPreview, ColdLimitPicksFavoredArticle) {
  const std::vector<double> scores{-1, -1, 1, -1, -1, -1};
  Rng rng = DeriveRng(1, std::string_view("cold"));
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(ChooseFromPreview(scores, 1.0, 1e-6, rng), 2u);
    EXPECT_NE(ChooseFromPreview(scores, -1.0, 1e-6, rng), 2u);
  }
}

TEST(ChooseFromPreview, ZeroBetaIsUniform) {
  const std::vector<double> scores{1, -1, 0.5, -0.2, 0.9, -1};
  Rng rng = DeriveRng(2, std::string_view("uniform"));
  constexpr int kTrials = 10000;
  std::vector<int> counts(scores.size(), 0);
  for (int i = 0; i < kTrials; ++i) ++counts[ChooseFromPreview(scores, 0.0, 0.5, rng)];
  const double p = 1.0 / 6.0;
  const double sigma = std::sqrt(kTrials * p * (1 - p));
  for (int c : counts) EXPECT_LT(std::abs(c - kTrials * p), 3 * sigma) << c;
}

TEST(ChooseFromPreview, FollowsSoftmaxProbabilities) {
  const std::vector<double> scores{1, -1};
  Rng rng = DeriveRng(3, std::string_view("softmax"));
  constexpr int kTrials = 20000;
  int first = 0;
  for (int i = 0; i < kTrials; ++i) first += ChooseFromPreview(scores, 0.5, 1.0, rng) == 0;
  const double p = std::exp(0.5) / (std::exp(0.5) + std::exp(-0.5));
  EXPECT_LT(std::abs(first - kTrials * p), 3 * std::sqrt(kTrials * p * (1 - p)));
}

TEST_F(SimWorld, RecordCountsAndPositives) {
  SimConfig config;
  config.n_users = 100;
  config.rng_seed = 8;
  const SimulationResult r = Simulate(data_->corpus, Recommenders(), config);
  EXPECT_EQ(r.log.records.size(), 2400u);
  std::size_t positives = 0;
  std::map<std::string, int> per_user_pos;
  for (const auto& rec : r.log.records) {
    positives += rec.label;
    per_user_pos[rec.user_id] += rec.label;
    EXPECT_EQ(rec.split, Split::kUnassigned);
    EXPECT_EQ(rec.origin, rec.label == 1 ? Origin::kChosen : Origin::kNegativePreview);
  }
  EXPECT_EQ(positives, 400u);
  for (const auto& [user, n] : per_user_pos) EXPECT_EQ(n, 4) << user;
  ASSERT_EQ(r.users.size(), 100u);
  EXPECT_EQ(r.users.front().user_id, "u001");
}

TEST_F(SimWorld, NoRepeatsAndRandomProvenance) {
  SimConfig config;
  config.n_users = 60;
  config.rng_seed = 2;
  const SimulationResult r = Simulate(data_->corpus, Recommenders(), config);
  std::map<std::string, std::string> slot;
  std::set<std::string> seen_slots;
  for (const auto& u : r.users) {
    slot[u.user_id] = u.recommender;
    seen_slots.insert(u.recommender);
  }
  EXPECT_EQ(seen_slots.size(), 4u);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& rec : r.log.records) {
    EXPECT_TRUE(pairs.insert({rec.user_id, rec.article_id}).second)
        << rec.user_id << " " << rec.article_id;
    EXPECT_EQ(rec.random_provenance, slot[rec.user_id] == kRandomAssignment);
  }
}

TEST_F(SimWorld, DeterministicUnderSeed) {
  SimConfig config;
  config.n_users = 30;
  config.rng_seed = 5;
  const SimulationResult a = Simulate(data_->corpus, Recommenders(), config);
  config.jobs = 4;
  const SimulationResult b = Simulate(data_->corpus, Recommenders(), config);
  std::ostringstream wa, wb;
  WriteInteractions(a.log, wa);
  WriteInteractions(b.log, wb);
  EXPECT_EQ(wa.str(), wb.str());
  EXPECT_EQ(UsersToJson(a.users, config), UsersToJson(b.users, config));
  config.rng_seed = 6;
  std::ostringstream wc;
  WriteInteractions(Simulate(data_->corpus, Recommenders(), config).log, wc);
  EXPECT_NE(wa.str(), wc.str());
}

TEST_F(SimWorld, ConfigurationErrors) {
  const Corpus small = testing::MakeCorpus({testing::MakeArticle("a", 0.0),
                                            testing::MakeArticle("b", 0.0)});
  SimConfig config;
  EXPECT_ERROR_CODE(Simulate(small, Recommenders(), config), kCorpusTooSmall);
  SimConfig bad = config;
  bad.preview_size = 1;
  EXPECT_ERROR_CODE(bad.Validate(), kInvalidArgument);
  bad = config;
  bad.assignment = {{"tfidf", 0.0}};
  EXPECT_ERROR_CODE(bad.Validate(), kInvalidArgument);
  bad = config;
  bad.assignment = {{"ripplenet", 1.0}};
  EXPECT_ERROR_CODE(Simulate(data_->corpus, Recommenders(), bad), kInvalidArgument);
}

TEST(GroundTruth, PassThroughAndPopulationMean) {
  EXPECT_EQ(GroundTruthBias(SimulatedUser{"u", 0.7, "tfidf"}), 0.7);
  SimConfig config;
  config.n_users = 400;
  config.rounds = 1;
  config.preview_size = 2;
  config.assignment = {{std::string(kRandomAssignment), 1.0}};
  config.rng_seed = 12;
  std::vector<NewsArticle> articles;
  for (int i = 0; i < 4; ++i) {
    articles.push_back(testing::MakeArticle("a" + std::to_string(i), 0.0));
  }
  const SimulationResult r =
      Simulate(testing::MakeCorpus(std::move(articles)), {}, config);
  double sum = 0.0;
  for (const auto& u : r.users) {
    EXPECT_GE(u.beta, -1.0);
    EXPECT_LE(u.beta, 1.0);
    sum += GroundTruthBias(u);
  }
  const double sigma = std::sqrt(1.0 / 3.0 / 400.0);
  EXPECT_LT(std::abs(sum / 400.0), 3 * sigma);
}

std::vector<double> MeasuredUserBias(const SimulationResult& r, const Corpus& c,
                                     const BiasKind& kind) {
  const auto histories = BuildHistories(r.log, [](const Interaction&) { return true; });
  std::vector<double> out;
  for (const auto& u : r.users) out.push_back(UserBias(histories.at(u.user_id), c, kind));
  return out;
}

TEST_F(SimWorld, LatentBiasDrivesMeasuredBias) {
  SimConfig config;
  config.n_users = 200;
  config.temperature = 0.2;
  config.rng_seed = 31;
  const SimulationResult r = Simulate(data_->corpus, Recommenders(), config);
  std::vector<double> beta;
  for (const auto& u : r.users) beta.push_back(GroundTruthBias(u));
  const auto measured = MeasuredUserBias(r, data_->corpus, config.latent_kind);
  EXPECT_GT(Pearson(beta, measured).r, 0.5);
}

TEST_F(SimWorld, StrongerLatentBiasYieldsStrongerMeasuredBias) {
  auto mean_abs = [&](double low, double high) {
    SimConfig config;
    config.n_users = 100;
    config.beta_low = low;
    config.beta_high = high;
    config.rng_seed = 77;
    const auto r = Simulate(data_->corpus, Recommenders(), config);
    double s = 0.0;
    for (double b : MeasuredUserBias(r, data_->corpus, config.latent_kind)) {
      s += std::abs(b);
    }
    return s / 100.0;
  };
  EXPECT_GT(mean_abs(0.8, 1.0), mean_abs(-0.1, 0.1));
}

}  // namespace
}  // namespace biasaudit

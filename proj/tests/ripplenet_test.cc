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


#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "biasaudit/common/random.h"
#include "biasaudit/recommenders/recommender.h"
#include "biasaudit/ripplenet/checkpoint.h"
#include "biasaudit/ripplenet/model.h"
#include "biasaudit/ripplenet/ripple_recommender.h"
#include "biasaudit/ripplenet/trainer.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_support.h"

namespace biasaudit::ripple {
namespace {

using ::biasaudit::testing::Fixture;
using ::biasaudit::testing::MakeArticle;

KnowledgeGraph ParseKg(const std::string& text) {
  std::istringstream in(text);
  return ParseKnowledgeGraph(in);
}

// Five entities, two relations.
KnowledgeGraph ToyKg() {
  return ParseKg(
      "e0\tr0\te1\n"
      "e1\tr1\te2\n"
      "e2\tr0\te3\n"
      "e3\tr1\te4\n"
      "e4\tr0\te0\n"
      "e0\tr1\te2\n"
      "e1\tr0\te4\n");
}

// Ten articles; article i mentions entity i % 5 and, for odd i, e9 (not
// in the graph).
Corpus ToyCorpus() {
  std::vector<NewsArticle> articles;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::string> ents{"e" + std::to_string(i % 5)};
    if (i % 2 == 1) ents.push_back("e9");
    articles.push_back(MakeArticle("n" + std::to_string(i), 0.0,
                                   StanceLabel::kFavor, ents));
  }
  return ::biasaudit::testing::MakeCorpus(std::move(articles));
}

// Twenty training records: users like articles whose entity index has
// their parity.
InteractionLog ToyLog() {
  InteractionLog log;
  for (int u = 0; u < 4; ++u) {
    for (int i = 0; i < 5; ++i) {
      Interaction r;
      r.user_id = "u" + std::to_string(u);
      const int article = (u + 2 * i) % 10;
      r.article_id = "n" + std::to_string(article);
      r.label = (article % 5) % 2 == u % 2 ? 1 : 0;
      r.origin = r.label == 1 ? Origin::kChosen : Origin::kNegativePreview;
      r.split = Split::kTrain;
      log.records.push_back(r);
    }
  }
  return log;
}

RippleConfig SmallConfig() {
  RippleConfig c;
  c.dim = 4;
  c.ripple_size = 4;
  c.hops = 2;
  c.epochs = 30;
  c.batch_size = 4;
  c.rng_seed = 11;
  return c;
}

TEST(RippleSet, SingletonOutEdgeIsCopied) {
  const KnowledgeGraph kg = ParseKg("e1\tr1\te2\n");
  const Corpus corpus = ::biasaudit::testing::MakeCorpus(
      {MakeArticle("a", 0.0, StanceLabel::kFavor, {"e1"})});
  RippleConfig config;
  config.ripple_size = 4;
  Rng rng = DeriveRng(1, std::string_view("u"));
  const RippleSet rs = BuildRippleSet({"u", {"a"}}, corpus, kg, config, rng);
  ASSERT_EQ(rs.hops.size(), 1u);
  const RippleHop& hop = rs.hops[0];
  ASSERT_EQ(hop.size(), 4u);
  const auto e1 = *kg.entities().Find("e1");
  const auto e2 = *kg.entities().Find("e2");
  const auto r1 = *kg.relations().Find("r1");
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(hop.heads[i], e1);
    EXPECT_EQ(hop.relations[i], r1);
    EXPECT_EQ(hop.tails[i], e2);
  }
}

TEST(RippleSet, SeedsWithoutOutEdgesGiveEmptyHop) {
  const KnowledgeGraph kg = ParseKg("e1\tr1\te2\n");
  const Corpus corpus = ::biasaudit::testing::MakeCorpus(
      {MakeArticle("a", 0.0, StanceLabel::kFavor, {"e2", "unknown"})});
  RippleConfig config;
  config.hops = 2;
  Rng rng = DeriveRng(1, std::string_view("u"));
  std::size_t skipped = 0;
  const RippleSet rs =
      BuildRippleSet({"u", {"a"}}, corpus, kg, config, rng, &skipped);
  ASSERT_EQ(rs.hops.size(), 2u);
  EXPECT_TRUE(rs.empty());
  EXPECT_EQ(skipped, 1u);
}

TEST(RippleSet, HopsFollowTailsAndRepeatDeterministically) {
  const KnowledgeGraph kg = ToyKg();
  const Corpus corpus = ToyCorpus();
  const RippleConfig config = SmallConfig();
  const UserHistory h{"u", {"n0", "n3"}};
  Rng r1 = DeriveRng(5, std::string_view("u"));
  Rng r2 = DeriveRng(5, std::string_view("u"));
  const RippleSet a = BuildRippleSet(h, corpus, kg, config, r1);
  const RippleSet b = BuildRippleSet(h, corpus, kg, config, r2);
  for (std::size_t hop = 0; hop < a.hops.size(); ++hop) {
    EXPECT_EQ(a.hops[hop].heads, b.hops[hop].heads);
    EXPECT_EQ(a.hops[hop].relations, b.hops[hop].relations);
    EXPECT_EQ(a.hops[hop].tails, b.hops[hop].tails);
    ASSERT_EQ(a.hops[hop].size(), 4u);
  }
  for (std::uint32_t head : a.hops[1].heads) {
    const auto& prev = a.hops[0].tails;
    EXPECT_NE(std::find(prev.begin(), prev.end(), head), prev.end());
  }
}

RippleModel Manual(const std::vector<std::vector<double>>& entities,
                   std::size_t relations, int dim) {
  RippleConfig config;
  config.dim = dim;
  std::vector<std::string> en, rn;
  std::vector<double> ee, re;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    en.push_back("e" + std::to_string(i));
    ee.insert(ee.end(), entities[i].begin(), entities[i].end());
  }
  for (std::size_t r = 0; r < relations; ++r) {
    rn.push_back("r" + std::to_string(r));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) re.push_back(i == j ? 1.0 : 0.0);
    }
  }
  return RippleModel::FromParameters(config, en, rn, ee, re);
}

TEST(Predict, SingleTripleOrthogonal) {
  // e0 = [1,0], e1 = [0,1]; R = I.
  const RippleModel m = Manual({{1, 0}, {0, 1}}, 1, 2);
  RippleSet rs;
  rs.hops.push_back({{0}, {0}, {1}});
  const std::vector<double> item{1, 0};
  EXPECT_DOUBLE_EQ(PredictClick(rs, item, m), 0.5);
  const auto w = AttentionWeights(rs, item, m);
  EXPECT_DOUBLE_EQ(w[0][0], 1.0);
}

TEST(Predict, TwoTriplesAgainstHandComputation) {
  const RippleModel m = Manual({{1, 0}, {0, 1}}, 1, 2);
  RippleSet rs;
  rs.hops.push_back({{0, 1}, {0, 0}, {0, 1}});
  const std::vector<double> item{1, 0};
  const double p0 = std::exp(1.0) / (std::exp(1.0) + 1.0);
  const auto w = AttentionWeights(rs, item, m);
  EXPECT_NEAR(w[0][0], p0, 1e-12);
  EXPECT_NEAR(w[0][0], 0.7311, 1e-4);
  const double score = PredictClick(rs, item, m);
  EXPECT_NEAR(score, 1.0 / (1.0 + std::exp(-p0)), 1e-12);
  EXPECT_NEAR(score, 0.6750, 1e-4);
}

TEST(Predict, EmptyRippleSetIsOneHalf) {
  const RippleModel m = Manual({{1, 0}, {0, 1}}, 1, 2);
  RippleSet rs;
  rs.hops.resize(2);
  EXPECT_DOUBLE_EQ(PredictClick(rs, std::vector<double>{3, -2}, m), 0.5);
}

TEST(Predict, AttentionSumsToOneAndIsPermutationInvariant) {
  const KnowledgeGraph kg = ToyKg();
  const RippleModel m = RippleModel::Initialize(kg, SmallConfig());
  RippleSet rs;
  rs.hops.push_back({{0, 1, 2, 3}, {0, 1, 0, 1}, {1, 2, 3, 4}});
  RippleSet perm;
  perm.hops.push_back({{3, 1, 0, 2}, {1, 1, 0, 0}, {4, 2, 1, 3}});
  const auto item = ItemEmbedding(std::vector<std::uint32_t>{0, 2}, m);
  const auto w = AttentionWeights(rs, item, m);
  EXPECT_NEAR(std::accumulate(w[0].begin(), w[0].end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(PredictClick(rs, item, m), PredictClick(perm, item, m), 1e-14);
}

TEST(ItemEmbedding, MeanOfResolvedEntities) {
  const RippleModel m = Manual({{1, 0}, {0, 1}}, 1, 2);
  EXPECT_EQ(ItemEmbedding(std::vector<std::uint32_t>{0}, m),
            (std::vector<double>{1, 0}));
  EXPECT_EQ(ItemEmbedding(std::vector<std::uint32_t>{0, 1}, m),
            (std::vector<double>{0.5, 0.5}));
  const NewsArticle a = MakeArticle("a", 0, StanceLabel::kFavor, {"zz"});
  EXPECT_EQ(ItemEmbedding(a, m), (std::vector<double>{0, 0}));
}

TEST(Model, InitializationBoundsAndShapes) {
  const KnowledgeGraph kg = ToyKg();
  const RippleConfig c = SmallConfig();
  const RippleModel m = RippleModel::Initialize(kg, c);
  EXPECT_EQ(m.entity_embeddings().size(), 5u * 4u);
  EXPECT_EQ(m.relation_embeddings().size(), 2u * 16u);
  const double bound = 0.5 / std::sqrt(4.0);
  for (double x : m.entity_embeddings()) EXPECT_LE(std::abs(x), bound);
  EXPECT_TRUE(m.CompatibleWith(kg));
  EXPECT_FALSE(m.CompatibleWith(ParseKg("x\ty\tz\n")));
  RippleConfig bad = c;
  bad.hops = 0;
  EXPECT_ERROR_CODE(RippleModel::Initialize(kg, bad), kInvalidArgument);
  EXPECT_ERROR_CODE(
      RippleModel::FromParameters(c, {"a"}, {"r"}, {1.0}, {1.0}),
      kInvalidArgument);
}

// Deterministic pseudo-random training batch over six entities.
struct GradientFixture {
  KnowledgeGraph kg;
  RippleModel model;
  std::vector<RippleSet> ripples;
  std::vector<TrainingExample> batch;

  explicit GradientFixture(double kg_weight, double l2_weight) {
    kg = ParseKg(
        "e0\tr0\te1\ne1\tr1\te2\ne2\tr0\te3\ne3\tr1\te4\ne4\tr0\te5\n"
        "e5\tr1\te0\n");
    RippleConfig c;
    c.dim = 4;
    c.hops = 2;
    c.kg_weight = kg_weight;
    c.l2_weight = l2_weight;
    c.rng_seed = 3;
    model = RippleModel::Initialize(kg, c);
    // Larger parameters make the gradient check less trivial.
    for (double& x : model.mutable_entity_embeddings()) x *= 4.0;
    for (double& x : model.mutable_relation_embeddings()) x *= 4.0;
    ripples.resize(3);
    ripples[0].hops = {{{0, 1, 1}, {0, 1, 1}, {1, 2, 2}},
                       {{2, 1}, {0, 1}, {3, 2}}};
    ripples[1].hops = {{{4, 5}, {0, 1}, {5, 0}}, {{0}, {0}, {1}}};
    ripples[2].hops = {{{3}, {1}, {4}}, {}};
    batch = {{&ripples[0], {3, 4}, 1},
             {&ripples[1], {1}, 0},
             {&ripples[2], {0, 5}, 1},
             {&ripples[0], {5}, 0}};
  }
};

void ExpectGradientsMatchFiniteDifferences(double kg_weight, double l2_weight) {
  GradientFixture f(kg_weight, l2_weight);
  ModelGradients g;
  ComputeLoss(f.model, f.batch, &g);
  ASSERT_EQ(g.entity.size(), f.model.entity_embeddings().size());
  ASSERT_EQ(g.relation.size(), f.model.relation_embeddings().size());
  const ModelGradients numeric =
      oracle::FiniteDifferenceGradients(f.model, f.batch, 1e-3);
  for (std::size_t i = 0; i < g.entity.size(); ++i) {
    EXPECT_LE(oracle::RelativeError(g.entity[i], numeric.entity[i]), 1e-4)
        << "entity[" << i << "] analytic " << g.entity[i] << " numeric "
        << numeric.entity[i];
  }
  for (std::size_t i = 0; i < g.relation.size(); ++i) {
    EXPECT_LE(oracle::RelativeError(g.relation[i], numeric.relation[i]), 1e-4)
        << "relation[" << i << "] analytic " << g.relation[i] << " numeric "
        << numeric.relation[i];
  }
}

TEST(Gradients, MatchFiniteDifferencesBceOnly) {
  ExpectGradientsMatchFiniteDifferences(0.0, 0.0);
}

TEST(Gradients, MatchFiniteDifferencesFullLoss) {
  ExpectGradientsMatchFiniteDifferences(0.3, 0.01);
}

TEST(Loss, ZeroWeightsReduceToBce) {
  GradientFixture f(0.0, 0.0);
  const LossBreakdown loss = ComputeLoss(f.model, f.batch);
  EXPECT_GT(loss.kg, -1.0);
  EXPECT_LT(loss.kg, 0.0);
  EXPECT_GT(loss.l2, 0.0);
  EXPECT_DOUBLE_EQ(loss.total, loss.bce);
  double bce = 0.0;
  for (const auto& ex : f.batch) {
    const auto item = ItemEmbedding(ex.item_entities, f.model);
    const double p = PredictClick(*ex.ripple, item, f.model);
    bce -= ex.label == 1 ? std::log(p) : std::log(1.0 - p);
  }
  EXPECT_NEAR(loss.bce, bce / f.batch.size(), 1e-12);
  GradientFixture w(0.5, 0.1);
  const LossBreakdown lw = ComputeLoss(w.model, w.batch);
  EXPECT_NEAR(lw.total, lw.bce + 0.5 * lw.kg + 0.1 * lw.l2, 1e-12);
}

TEST(Train, ToyProblemReducesBce) {
  const KnowledgeGraph kg = ToyKg();
  const Corpus corpus = ToyCorpus();
  const InteractionLog log = ToyLog();
  const TrainResult result = Train(kg, log, corpus, SmallConfig());
  ASSERT_EQ(result.trace.size(), 30u);
  EXPECT_LT(result.trace.back().bce, result.trace.front().bce);
  EXPECT_TRUE(result.model.AllFinite());
  RippleConfig adam = SmallConfig();
  adam.optimizer = Optimizer::kAdam;
  adam.learning_rate = 0.01;
  const TrainResult ra = Train(kg, log, corpus, adam);
  EXPECT_LT(ra.trace.back().bce, ra.trace.front().bce);
}

TEST(Train, DeterministicForFixedSeed) {
  const KnowledgeGraph kg = ToyKg();
  const Corpus corpus = ToyCorpus();
  const InteractionLog log = ToyLog();
  const TrainResult a = Train(kg, log, corpus, SmallConfig());
  const TrainResult b = Train(kg, log, corpus, SmallConfig());
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].total, b.trace[i].total);
    EXPECT_EQ(a.trace[i].bce, b.trace[i].bce);
  }
  EXPECT_TRUE(std::equal(a.model.entity_embeddings().begin(),
                         a.model.entity_embeddings().end(),
                         b.model.entity_embeddings().begin()));
}

TEST(Train, DataPreparationAndErrors) {
  const KnowledgeGraph kg = ToyKg();
  const Corpus corpus = ToyCorpus();
  InteractionLog log = ToyLog();
  const TrainingData data = PrepareTrainingData(kg, log, corpus, SmallConfig());
  EXPECT_EQ(data.examples.size(), 20u);
  EXPECT_EQ(data.ripples.size(), 4u);
  EXPECT_GT(data.skipped_entities, 0u);
  InteractionLog positives;
  for (const auto& r : log.records) {
    if (r.label == 1) positives.records.push_back(r);
  }
  EXPECT_ERROR_CODE(PrepareTrainingData(kg, positives, corpus, SmallConfig()),
                    kNoNegatives);
  RippleConfig wild = SmallConfig();
  wild.learning_rate = 1e300;
  EXPECT_ERROR_CODE(Train(kg, log, corpus, wild), kDivergenceDetected);
}

TEST(Train, LogCsvFormat) {
  std::vector<EpochLoss> trace{{1, 0.5, -0.25, 2.0, 0.49}};
  std::ostringstream out;
  WriteTrainingLog(trace, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "epoch,bce,kg_loss,l2,total");
}

TEST(Checkpoint, RoundTripIsExact) {
  const KnowledgeGraph kg = ToyKg();
  RippleConfig c = SmallConfig();
  c.optimizer = Optimizer::kAdam;
  c.learning_rate = 0.1 / 3.0;
  const RippleModel m = RippleModel::Initialize(kg, c);
  const RippleModel back = CheckpointFromJson(CheckpointToJson(m));
  EXPECT_EQ(back.config().hops, c.hops);
  EXPECT_EQ(back.config().ripple_size, c.ripple_size);
  EXPECT_EQ(back.config().learning_rate, c.learning_rate);
  EXPECT_EQ(back.config().rng_seed, c.rng_seed);
  EXPECT_EQ(back.config().optimizer, Optimizer::kAdam);
  EXPECT_EQ(back.entities().names(), m.entities().names());
  EXPECT_EQ(back.relations().names(), m.relations().names());
  EXPECT_TRUE(std::equal(m.entity_embeddings().begin(),
                         m.entity_embeddings().end(),
                         back.entity_embeddings().begin()));
  EXPECT_TRUE(std::equal(m.relation_embeddings().begin(),
                         m.relation_embeddings().end(),
                         back.relation_embeddings().begin()));
  ::biasaudit::testing::TempDir dir;
  SaveCheckpoint(m, dir / "model.json");
  EXPECT_EQ(CheckpointToJson(LoadCheckpoint(dir / "model.json")),
            CheckpointToJson(m));
  EXPECT_ERROR_CODE(CheckpointFromJson("{}"), kMalformedRecord);
  EXPECT_ERROR_CODE(CheckpointFromJson("not json"), kMalformedRecord);
}

TEST(Recommender, ZeroModelRanksBySmallestIds) {
  auto kg = std::make_shared<const KnowledgeGraph>(
      LoadKnowledgeGraph(Fixture("kg.tsv")));
  auto corpus = std::make_shared<const Corpus>(
      ::biasaudit::testing::LoadFixtureCorpus());
  auto model = std::make_shared<const RippleModel>(
      RippleModel::Zeros(*kg, RippleConfig{}));
  const RippleRecommender rec(model, corpus, kg);
  EXPECT_TRUE(rec.scores_are_probabilities());
  const auto top = RecommendTopK(rec, UserHistory{"u1", {"a01"}}, *corpus, 5);
  ASSERT_EQ(top.size(), 5u);
  const std::vector<std::string> expected{"a02", "a03", "a04", "a05", "a06"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(top[i].article_id, expected[i]);
    EXPECT_DOUBLE_EQ(top[i].click_score, 0.5);
  }
  auto other = std::make_shared<const KnowledgeGraph>(ToyKg());
  EXPECT_ERROR_CODE(RippleRecommender(model, corpus, other), kInvalidArgument);
}

TEST(Recommender, ScoresMatchTrainingRippleSets) {
  const KnowledgeGraph kg_value = ToyKg();
  const Corpus corpus_value = ToyCorpus();
  const InteractionLog log = ToyLog();
  const RippleConfig config = SmallConfig();
  const TrainResult trained = Train(kg_value, log, corpus_value, config);
  const TrainingData data = PrepareTrainingData(kg_value, log, corpus_value, config);
  auto model = std::make_shared<const RippleModel>(trained.model);
  auto kg = std::make_shared<const KnowledgeGraph>(ToyKg());
  auto corpus = std::make_shared<const Corpus>(ToyCorpus());
  const RippleRecommender rec(model, corpus, kg);
  const auto histories = BuildHistories(
      log, [](const Interaction& r) { return r.split == Split::kTrain; });
  const std::vector<std::string> cand{"n2"};
  const auto score = rec.Score(histories.at("u1"), cand);
  const auto item = ItemEmbedding(corpus->At("n2"), *model);
  EXPECT_DOUBLE_EQ(score[0], PredictClick(data.ripples.at("u1"), item, *model));
}

}  // namespace
}  // namespace biasaudit::ripple

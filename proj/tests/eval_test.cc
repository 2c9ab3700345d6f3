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


#include <map>
#include <random>
#include <utility>

#include "biasaudit/eval/evaluate.h"
#include "biasaudit/eval/metrics.h"
#include "biasaudit/eval/split.h"
#include "biasaudit/recommenders/recommender.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_support.h"

namespace biasaudit {
namespace {

using testing::Fixture;

InteractionLog Unsplit(int n, int random_every) {
  InteractionLog log;
  for (int i = 0; i < n; ++i) {
    Interaction r;
    r.user_id = "u" + std::to_string(i % 7);
    r.article_id = "a" + std::to_string(i);
    r.label = i % 3 == 0 ? 1 : 0;
    r.random_provenance = random_every > 0 && i % random_every == 0;
    log.records.push_back(r);
  }
  return log;
}

TEST(Split, EightyTwentyByRecord) {
  SplitSummary summary;
  const InteractionLog split =
      SplitInteractions(Unsplit(100, 4), {0.8, 9}, &summary);
  ASSERT_EQ(split.records.size(), 100u);
  std::size_t train = 0, test = 0, random = 0;
  for (std::size_t i = 0; i < split.records.size(); ++i) {
    const Interaction& r = split.records[i];
    EXPECT_EQ(r.article_id, "a" + std::to_string(i));  // order kept
    if (r.split == Split::kTrain) ++train;
    if (InTestSet(r, TestSet::kComplete)) ++test;
    if (r.split == Split::kRandomTest) {
      ++random;
      EXPECT_TRUE(r.random_provenance);
    }
    if (r.split == Split::kCompleteTest) {
      EXPECT_FALSE(r.random_provenance);
    }
  }
  EXPECT_EQ(train, 80u);
  EXPECT_EQ(test, 20u);
  EXPECT_GT(random, 0u);
  EXPECT_EQ(summary.train, 80u);
  EXPECT_EQ(summary.complete_test, 20u);
  EXPECT_EQ(summary.random_test, random);
  EXPECT_TRUE(summary.warnings.empty());
}

TEST(Split, DeterministicUnderSeed) {
  const InteractionLog log = Unsplit(100, 4);
  const auto a = SplitInteractions(log, {0.8, 3});
  const auto b = SplitInteractions(log, {0.8, 3});
  const auto c = SplitInteractions(log, {0.8, 4});
  bool differs = false;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    EXPECT_EQ(a.records[i].split, b.records[i].split);
    differs |= a.records[i].split != c.records[i].split;
  }
  EXPECT_TRUE(differs);
}

TEST(Split, NoRandomRecordsWarns) {
  SplitSummary summary;
  SplitInteractions(Unsplit(20, 0), {0.8, 1}, &summary);
  EXPECT_EQ(summary.random_test, 0u);
  ASSERT_EQ(summary.warnings.size(), 1u);
}

TEST(Split, ErrorsAndEnsure) {
  EXPECT_ERROR_CODE(SplitInteractions(InteractionLog{}, {}), kEmptyLog);
  EXPECT_ERROR_CODE(SplitInteractions(Unsplit(5, 0), {1.5, 0}), kInvalidArgument);
  const InteractionLog fixture = LoadInteractions(Fixture("interactions.tsv"));
  const InteractionLog same = EnsureSplit(fixture, {0.5, 1});
  for (std::size_t i = 0; i < fixture.records.size(); ++i) {
    EXPECT_EQ(same.records[i].split, fixture.records[i].split);
  }
  const InteractionLog fresh = EnsureSplit(Unsplit(10, 0), {0.8, 1});
  for (const auto& r : fresh.records) EXPECT_NE(r.split, Split::kUnassigned);
}

TEST(Metrics, AccuracyExamples) {
  const std::vector<double> s{0.9, 0.1};
  EXPECT_DOUBLE_EQ(Accuracy(s, std::vector<int>{1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(Accuracy(s, std::vector<int>{0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(Accuracy(std::vector<double>{0.5}, std::vector<int>{1}), 1.0);
  EXPECT_ERROR_CODE(Accuracy(s, std::vector<int>{1}), kLengthMismatch);
  EXPECT_ERROR_CODE(Accuracy(std::vector<double>{}, std::vector<int>{}),
                    kEmptyInput);
}

TEST(Metrics, AucExamples) {
  EXPECT_DOUBLE_EQ(Auc(std::vector<double>{0.9, 0.8, 0.3},
                       std::vector<int>{1, 1, 0}),
                   1.0);
  EXPECT_DOUBLE_EQ(Auc(std::vector<double>{0.4, 0.4}, std::vector<int>{1, 0}),
                   0.5);
  EXPECT_ERROR_CODE(Auc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}),
                    kSingleClass);
}

TEST(Metrics, AucMatchesPairwiseOracle) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> level(0, 9);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s(50);
    std::vector<int> y(50);
    for (int i = 0; i < 50; ++i) {
      s[i] = level(rng) / 10.0;  // coarse levels force ties
      y[i] = coin(rng) ? 1 : 0;
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_NEAR(Auc(s, y), oracle::PairwiseAuc(s, y), 1e-12);
  }
}

TEST(Metrics, F1Examples) {
  const std::vector<double> preds{1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(F1Score(preds, std::vector<int>{1, 0, 1, 0}), 0.5);
  EXPECT_DOUBLE_EQ(F1Score(preds, std::vector<int>{1, 1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(F1Score(std::vector<double>{0.1, 0.2},
                           std::vector<int>{1, 0}),
                   0.0);
  EXPECT_ERROR_CODE(F1Score(preds, std::vector<int>{1}), kLengthMismatch);
}

// Returns each record's label as its score.
class OracleRecommender : public Recommender {
 public:
  explicit OracleRecommender(const InteractionLog& log) {
    for (const auto& r : log.records) labels_[{r.user_id, r.article_id}] = r.label;
  }
  std::string name() const override { return "oracle"; }
  std::vector<double> Score(const UserHistory& h,
                            std::span<const std::string> c) const override {
    std::vector<double> out;
    for (const auto& id : c) out.push_back(labels_.at({h.user_id, id}));
    return out;
  }
  bool scores_are_probabilities() const override { return true; }

 private:
  std::map<std::pair<std::string, std::string>, int> labels_;
};

class ConstantRecommender : public Recommender {
 public:
  std::string name() const override { return "constant"; }
  std::vector<double> Score(const UserHistory&,
                            std::span<const std::string> c) const override {
    return std::vector<double>(c.size(), 0.5);
  }
  bool scores_are_probabilities() const override { return true; }
};

TEST(Evaluate, OracleIsPerfectOnBothSets) {
  const Corpus corpus = testing::LoadFixtureCorpus();
  const auto log = LoadInteractions(Fixture("interactions.tsv"), &corpus);
  const OracleRecommender oracle(log);
  for (TestSet set : {TestSet::kComplete, TestSet::kRandom}) {
    const EvalResult r = Evaluate(oracle, log, corpus, set);
    EXPECT_EQ(r.acc, 1.0);
    EXPECT_EQ(r.auc, 1.0);
    EXPECT_EQ(r.f1, 1.0);
    EXPECT_EQ(r.model_name, "oracle");
  }
}

TEST(Evaluate, CountsAndColdUsers) {
  const Corpus corpus = testing::LoadFixtureCorpus();
  const auto log = LoadInteractions(Fixture("interactions.tsv"), &corpus);
  const ConstantRecommender constant;
  const EvalResult r = Evaluate(constant, log, corpus, TestSet::kComplete);
  EXPECT_EQ(r.auc, 0.5);
  EXPECT_EQ(r.n_records, 7u);
  EXPECT_EQ(r.n_users, 3u);
  EXPECT_EQ(r.cold_users, 1u);
  EXPECT_EQ(r.cold_records, 2u);
  EvalOptions parallel;
  parallel.jobs = 4;
  const EvalResult p = Evaluate(constant, log, corpus, TestSet::kComplete, parallel);
  EXPECT_EQ(p.n_records, r.n_records);
  EXPECT_EQ(p.acc, r.acc);
}

TEST(Evaluate, MinMaxScalesTextScoresPerUser) {
  const Corpus corpus = testing::LoadFixtureCorpus();
  const auto log = LoadInteractions(Fixture("interactions.tsv"), &corpus);
  // Raw scores far outside [0, 1]; scaling maps each user's best to 1.
  class Shifted : public Recommender {
   public:
    std::string name() const override { return "shifted"; }
    std::vector<double> Score(const UserHistory&,
                              std::span<const std::string> c) const override {
      std::vector<double> out;
      for (const auto& id : c) out.push_back(100.0 + (id == "a04" || id == "a09" || id == "a07" ? 5 : 0));
      return out;
    }
  } shifted;
  const EvalResult r = Evaluate(shifted, log, corpus, TestSet::kComplete);
  EXPECT_EQ(r.acc, 1.0);
  EXPECT_EQ(r.auc, 1.0);
}

TEST(Evaluate, LeakageIsRejected) {
  const Corpus corpus = testing::LoadFixtureCorpus();
  const auto log = LoadInteractions(Fixture("interactions.tsv"), &corpus);
  std::vector<const Interaction*> u1_test;
  for (const auto& r : log.records) {
    if (r.user_id == "u1" && r.split != Split::kTrain) u1_test.push_back(&r);
  }
  EXPECT_NO_THROW(CheckNoLeakage(UserHistory{"u1", {"a01", "a08"}}, u1_test));
  EXPECT_ERROR_CODE(CheckNoLeakage(UserHistory{"u1", {"a01", "a04"}}, u1_test),
                    kLeakage);
  const auto histories = TrainHistories(log);
  EXPECT_EQ(histories.at("u1").article_ids,
            (std::vector<std::string>{"a01", "a08"}));
}

TEST(Evaluate, NothingToScore) {
  const Corpus corpus = testing::LoadFixtureCorpus();
  InteractionLog log = LoadInteractions(Fixture("interactions.tsv"), &corpus);
  std::erase_if(log.records, [](const Interaction& r) {
    return r.split == Split::kRandomTest;
  });
  EXPECT_ERROR_CODE(Evaluate(ConstantRecommender(), log, corpus, TestSet::kRandom),
                    kEmptyInput);
}

TEST(Results, JsonRoundTripAndMarkdown) {
  std::vector<EvalResult> results(2);
  results[0] = {"tfidf", TestSet::kComplete, 0.75, 0.8125, 0.5, 40, 10, 1, 4};
  results[1] = {"ripplenet", TestSet::kRandom, 0.5, 0.5, 0.0, 8, 3, 0, 0};
  const auto back = ResultsFromJson(ResultsToJson(results));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].model_name, "tfidf");
  EXPECT_EQ(back[0].auc, 0.8125);
  EXPECT_EQ(back[1].test_set, TestSet::kRandom);
  EXPECT_EQ(back[0].cold_records, 4u);
  const std::string md = ResultsToMarkdown(results);
  EXPECT_NE(md.find("| Model"), std::string::npos);
  EXPECT_NE(md.find("ripplenet"), std::string::npos);
  EXPECT_NE(md.find("0.812"), std::string::npos);
  EXPECT_ERROR_CODE(ResultsFromJson("{"), kMalformedRecord);
}

}  // namespace
}  // namespace biasaudit

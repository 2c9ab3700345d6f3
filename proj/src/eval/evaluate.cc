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


#include "biasaudit/eval/evaluate.h"

#include <set>
#include <sstream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/parallel.h"
#include "biasaudit/eval/metrics.h"
#include "fmt/format.h"
#include "json.hpp"

namespace biasaudit {
namespace {

using Json = nlohmann::ordered_json;

struct UserScores {
  std::vector<double> scores;
  std::vector<int> labels;
};

}  // namespace

std::map<std::string, UserHistory> TrainHistories(const InteractionLog& log) {
  return BuildHistories(
      log, [](const Interaction& r) { return r.split == Split::kTrain; });
}

void CheckNoLeakage(const UserHistory& history,
                    std::span<const Interaction* const> test_records) {
  const std::set<std::string> profile(history.article_ids.begin(),
                                      history.article_ids.end());
  for (const Interaction* r : test_records) {
    if (r->user_id != history.user_id || r->split == Split::kTrain ||
        r->split == Split::kUnassigned) {
      continue;
    }
    if (profile.contains(r->article_id)) {
      throw Error(ErrorCode::kLeakage,
                  "profile of user " + history.user_id +
                      " contains test article " + r->article_id);
    }
  }
}

EvalResult Evaluate(const Recommender& recommender, const InteractionLog& log,
                    const Corpus& corpus, TestSet set,
                    const EvalOptions& options) {
  EvalResult result;
  result.model_name = recommender.name();
  result.test_set = set;

  const auto histories = TrainHistories(log);
  std::map<std::string, std::vector<const Interaction*>> by_user;
  for (const Interaction& r : log.records) {
    if (InTestSet(r, set)) by_user[r.user_id].push_back(&r);
  }

  std::vector<const UserHistory*> users;
  std::vector<const std::vector<const Interaction*>*> records;
  for (const auto& [user, recs] : by_user) {
    auto it = histories.find(user);
    if (it == histories.end()) {
      ++result.cold_users;
      result.cold_records += recs.size();
      continue;
    }
    users.push_back(&it->second);
    records.push_back(&recs);
  }
  if (users.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                fmt::format("no scorable users in the {} test set",
                            TestSetName(set)));
  }

  std::vector<UserScores> per_user(users.size());
  ParallelFor(users.size(), options.jobs, [&](std::size_t u) {
    const UserHistory& history = *users[u];
    const auto& recs = *records[u];
    CheckNoLeakage(history, recs);
    std::vector<std::string> candidates;
    candidates.reserve(recs.size());
    for (const Interaction* r : recs) {
      corpus.At(r->article_id);
      candidates.push_back(r->article_id);
    }
    std::vector<double> scores = recommender.Score(history, candidates);
    if (!recommender.scores_are_probabilities()) scores = MinMaxScale(scores);
    UserScores& out = per_user[u];
    out.scores = std::move(scores);
    for (const Interaction* r : recs) out.labels.push_back(r->label);
  });

  std::vector<double> scores;
  std::vector<int> labels;
  for (const UserScores& u : per_user) {
    scores.insert(scores.end(), u.scores.begin(), u.scores.end());
    labels.insert(labels.end(), u.labels.begin(), u.labels.end());
  }
  result.n_users = users.size();
  result.n_records = scores.size();
  result.acc = Accuracy(scores, labels, options.threshold);
  result.auc = Auc(scores, labels);
  result.f1 = F1Score(scores, labels, options.threshold);
  return result;
}

std::string ResultsToJson(std::span<const EvalResult> results) {
  Json arr = Json::array();
  for (const EvalResult& r : results) {
    Json j;
    j["model_name"] = r.model_name;
    j["test_set"] = std::string(TestSetName(r.test_set));
    j["acc"] = r.acc;
    j["auc"] = r.auc;
    j["f1"] = r.f1;
    j["n_records"] = r.n_records;
    j["n_users"] = r.n_users;
    j["cold_users"] = r.cold_users;
    j["cold_records"] = r.cold_records;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<EvalResult> ResultsFromJson(std::string_view json_text) {
  std::vector<EvalResult> out;
  try {
    for (const Json& j : Json::parse(json_text)) {
      EvalResult r;
      r.model_name = j.at("model_name").get<std::string>();
      const auto set = ParseTestSet(j.at("test_set").get<std::string>());
      if (!set) throw Error(ErrorCode::kMalformedRecord, "unknown test_set");
      r.test_set = *set;
      r.acc = j.at("acc").get<double>();
      r.auc = j.at("auc").get<double>();
      r.f1 = j.at("f1").get<double>();
      r.n_records = j.at("n_records").get<std::size_t>();
      r.n_users = j.value("n_users", std::size_t{0});
      r.cold_users = j.value("cold_users", std::size_t{0});
      r.cold_records = j.value("cold_records", std::size_t{0});
      out.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("results: ") + e.what());
  }
  return out;
}

std::string ResultsToMarkdown(std::span<const EvalResult> results) {
  std::ostringstream out;
  out << "| Model | Test set | ACC | AUC | F1 | Records | Users | Cold users |\n";
  out << "|---|---|---:|---:|---:|---:|---:|---:|\n";
  for (const EvalResult& r : results) {
    out << fmt::format("| {} | {} | {:.3f} | {:.3f} | {:.3f} | {} | {} | {} |\n",
                       r.model_name, TestSetName(r.test_set), r.acc, r.auc,
                       r.f1, r.n_records, r.n_users, r.cold_users);
  }
  return out.str();
}

}  // namespace biasaudit

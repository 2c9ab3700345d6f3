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


#ifndef BIASAUDIT_EVAL_EVALUATE_H_
#define BIASAUDIT_EVAL_EVALUATE_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/interactions.h"
#include "biasaudit/recommenders/recommender.h"

namespace biasaudit {

struct EvalResult {
  std::string model_name;
  TestSet test_set = TestSet::kComplete;
  double acc = 0.0;
  double auc = 0.0;
  double f1 = 0.0;
  std::size_t n_records = 0;   // scored records
  std::size_t n_users = 0;     // scored users
  std::size_t cold_users = 0;  // skipped: no clicks in Train
  std::size_t cold_records = 0;
};

struct EvalOptions {
  double threshold = 0.5;
  int jobs = 1;
};

// Train-split click histories keyed by user.
std::map<std::string, UserHistory> TrainHistories(const InteractionLog& log);

// Throws Leakage when `history` contains an article the same user has a
// test-split record for.
void CheckNoLeakage(const UserHistory& history,
                    std::span<const Interaction* const> test_records);

// Scores every test record of `set` against the user's Train-split
// history. Text recommenders' similarities are min-max scaled per user over
// that user's test candidates; probabilistic recommenders are used as is.
// Users without Train clicks are skipped and counted. Throws EmptyInput
// when nothing is left to score, SingleClass when the scored records carry
// one label only.
EvalResult Evaluate(const Recommender& recommender, const InteractionLog& log,
                    const Corpus& corpus, TestSet set,
                    const EvalOptions& options = {});

// results.json: array of result objects.
std::string ResultsToJson(std::span<const EvalResult> results);
std::vector<EvalResult> ResultsFromJson(std::string_view json_text);
// Markdown table, one row per (model, test set).
std::string ResultsToMarkdown(std::span<const EvalResult> results);

}  // namespace biasaudit

#endif  // BIASAUDIT_EVAL_EVALUATE_H_

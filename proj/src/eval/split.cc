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


#include "biasaudit/eval/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biasaudit/common/error.h"
#include "biasaudit/common/random.h"

namespace biasaudit {

SplitSummary SummarizeSplit(const InteractionLog& log) {
  SplitSummary s;
  for (const Interaction& r : log.records) {
    if (r.split == Split::kTrain) ++s.train;
    if (InTestSet(r, TestSet::kComplete)) ++s.complete_test;
    if (InTestSet(r, TestSet::kRandom)) ++s.random_test;
  }
  if (s.random_test == 0) {
    s.warnings.push_back("random test set is empty: no test record has "
                         "random-recommender provenance");
  }
  return s;
}

InteractionLog SplitInteractions(const InteractionLog& log,
                                 const SplitConfig& config,
                                 SplitSummary* summary) {
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "train_fraction must lie strictly between 0 and 1");
  }
  if (log.records.empty()) {
    throw Error(ErrorCode::kEmptyLog, "cannot split an empty interaction log");
  }
  const std::size_t n = log.records.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = DeriveRng(config.rng_seed, std::string_view("split"));
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(config.train_fraction * static_cast<double>(n)));

  InteractionLog out = log;
  for (std::size_t pos = 0; pos < n; ++pos) {
    Interaction& r = out.records[order[pos]];
    if (pos < n_train) {
      r.split = Split::kTrain;
    } else {
      r.split = r.random_provenance ? Split::kRandomTest : Split::kCompleteTest;
    }
  }
  if (summary != nullptr) *summary = SummarizeSplit(out);
  return out;
}

InteractionLog EnsureSplit(const InteractionLog& log, const SplitConfig& config,
                           SplitSummary* summary) {
  const bool assigned =
      std::any_of(log.records.begin(), log.records.end(),
                  [](const Interaction& r) { return r.split != Split::kUnassigned; });
  if (!assigned) return SplitInteractions(log, config, summary);
  if (summary != nullptr) *summary = SummarizeSplit(log);
  return log;
}

}  // namespace biasaudit

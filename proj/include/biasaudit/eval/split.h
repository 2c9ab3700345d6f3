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


#ifndef BIASAUDIT_EVAL_SPLIT_H_
#define BIASAUDIT_EVAL_SPLIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "biasaudit/corpus/interactions.h"

namespace biasaudit {

struct SplitConfig {
  double train_fraction = 0.8;
  std::uint64_t rng_seed = 0;
};

struct SplitSummary {
  std::size_t train = 0;
  std::size_t complete_test = 0;  // includes the random-test records
  std::size_t random_test = 0;
  std::vector<std::string> warnings;
};

// Record-level split: the first round(train_fraction * n) records of a
// seeded shuffle go to Train, the rest to CompleteTest, upgraded to
// RandomTest when they carry random provenance. Records keep their order in
// the returned log. Throws EmptyLog, InvalidArgument.
InteractionLog SplitInteractions(const InteractionLog& log,
                                 const SplitConfig& config,
                                 SplitSummary* summary = nullptr);

// The log unchanged when any record already carries a split, otherwise
// SplitInteractions(log, config).
InteractionLog EnsureSplit(const InteractionLog& log, const SplitConfig& config,
                           SplitSummary* summary = nullptr);

SplitSummary SummarizeSplit(const InteractionLog& log);

}  // namespace biasaudit

#endif  // BIASAUDIT_EVAL_SPLIT_H_

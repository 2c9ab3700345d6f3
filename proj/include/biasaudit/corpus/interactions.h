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


#ifndef BIASAUDIT_CORPUS_INTERACTIONS_H_
#define BIASAUDIT_CORPUS_INTERACTIONS_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biasaudit {

class Corpus;

enum class Origin { kChosen, kNegativePreview, kSynthetic };

enum class Split { kUnassigned, kTrain, kCompleteTest, kRandomTest };

enum class TestSet { kComplete, kRandom };

std::string_view OriginName(Origin origin);
std::string_view SplitName(Split split);
std::string_view TestSetName(TestSet set);
std::optional<TestSet> ParseTestSet(std::string_view name);

struct Interaction {
  std::string user_id;
  std::string article_id;
  int label = 0;
  Origin origin = Origin::kChosen;
  // The preview this record came from was produced by the random
  // recommender; such test records form the random test set.
  bool random_provenance = false;
  Split split = Split::kUnassigned;
};

// Random-test records are also complete-test records.
inline bool InTestSet(const Interaction& r, TestSet set) {
  if (set == TestSet::kRandom) return r.split == Split::kRandomTest;
  return r.split == Split::kCompleteTest || r.split == Split::kRandomTest;
}

struct InteractionLog {
  std::vector<Interaction> records;
};

// interactions.tsv: user_id, article_id, label, origin, split. The origin
// column is one of chosen|negative_preview|synthetic, suffixed with
// "/random" for random-recommender provenance. Split is one of
// unassigned|train|complete_test|random_test. When `corpus` is given every
// article_id must resolve (UnknownArticle otherwise).
InteractionLog ParseInteractions(std::istream& in,
                                 const Corpus* corpus = nullptr);
InteractionLog LoadInteractions(const std::filesystem::path& path,
                                const Corpus* corpus = nullptr);
void WriteInteractions(const InteractionLog& log, std::ostream& out);

// A user's reading history: clicked article ids in log order.
struct UserHistory {
  std::string user_id;
  std::vector<std::string> article_ids;
};

// Histories from positive (label 1) records accepted by `filter`, keyed and
// ordered by user id. Users with no accepted positives are absent.
std::map<std::string, UserHistory> BuildHistories(
    const InteractionLog& log,
    const std::function<bool(const Interaction&)>& filter);

}  // namespace biasaudit

#endif  // BIASAUDIT_CORPUS_INTERACTIONS_H_

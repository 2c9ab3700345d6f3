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


#include "biasaudit/corpus/interactions.h"

#include <istream>
#include <ostream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"
#include "biasaudit/corpus/corpus.h"

namespace biasaudit {
namespace {

constexpr std::string_view kRandomSuffix = "/random";

[[noreturn]] void Malformed(std::size_t line, const std::string& reason) {
  throw Error(ErrorCode::kMalformedRecord,
              "interactions line " + std::to_string(line) + ": " + reason);
}

std::optional<Origin> ParseOrigin(std::string_view s) {
  if (s == "chosen") return Origin::kChosen;
  if (s == "negative_preview") return Origin::kNegativePreview;
  if (s == "synthetic") return Origin::kSynthetic;
  return std::nullopt;
}

std::optional<Split> ParseSplit(std::string_view s) {
  if (s == "unassigned" || s.empty()) return Split::kUnassigned;
  if (s == "train") return Split::kTrain;
  if (s == "complete_test") return Split::kCompleteTest;
  if (s == "random_test") return Split::kRandomTest;
  return std::nullopt;
}

}  // namespace

std::string_view OriginName(Origin origin) {
  switch (origin) {
    case Origin::kChosen: return "chosen";
    case Origin::kNegativePreview: return "negative_preview";
    case Origin::kSynthetic: return "synthetic";
  }
  return "chosen";
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kUnassigned: return "unassigned";
    case Split::kTrain: return "train";
    case Split::kCompleteTest: return "complete_test";
    case Split::kRandomTest: return "random_test";
  }
  return "unassigned";
}

std::string_view TestSetName(TestSet set) {
  return set == TestSet::kComplete ? "complete" : "random";
}

std::optional<TestSet> ParseTestSet(std::string_view name) {
  if (name == "complete") return TestSet::kComplete;
  if (name == "random") return TestSet::kRandom;
  return std::nullopt;
}

InteractionLog ParseInteractions(std::istream& in, const Corpus* corpus) {
  InteractionLog log;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = StripCr(raw);
    if (text.empty()) continue;
    auto f = SplitFields(text, '\t');
    if (f.size() != 5) {
      Malformed(line, "expected 5 fields, got " + std::to_string(f.size()));
    }
    Interaction r;
    r.user_id = std::string(f[0]);
    r.article_id = std::string(f[1]);
    if (r.user_id.empty() || r.article_id.empty()) {
      Malformed(line, "empty user or article id");
    }
    if (f[2] == "1") {
      r.label = 1;
    } else if (f[2] == "0") {
      r.label = 0;
    } else {
      Malformed(line, "label must be 0 or 1");
    }
    std::string_view origin = f[3];
    if (origin.ends_with(kRandomSuffix)) {
      r.random_provenance = true;
      origin.remove_suffix(kRandomSuffix.size());
    }
    auto o = ParseOrigin(origin);
    if (!o) Malformed(line, "unknown origin " + std::string(f[3]));
    r.origin = *o;
    auto s = ParseSplit(f[4]);
    if (!s) Malformed(line, "unknown split " + std::string(f[4]));
    r.split = *s;
    if (r.split == Split::kRandomTest && !r.random_provenance) {
      Malformed(line, "random_test record without random provenance");
    }
    if (corpus != nullptr && corpus->Find(r.article_id) == nullptr) {
      throw Error(ErrorCode::kUnknownArticle,
                  "interactions line " + std::to_string(line) + ": " +
                      r.article_id);
    }
    log.records.push_back(std::move(r));
  }
  return log;
}

InteractionLog LoadInteractions(const std::filesystem::path& path,
                                const Corpus* corpus) {
  std::ifstream in = OpenInput(path);
  return ParseInteractions(in, corpus);
}

void WriteInteractions(const InteractionLog& log, std::ostream& out) {
  for (const Interaction& r : log.records) {
    out << r.user_id << '\t' << r.article_id << '\t' << r.label << '\t'
        << OriginName(r.origin) << (r.random_provenance ? kRandomSuffix : "")
        << '\t' << SplitName(r.split) << '\n';
  }
}

std::map<std::string, UserHistory> BuildHistories(
    const InteractionLog& log,
    const std::function<bool(const Interaction&)>& filter) {
  std::map<std::string, UserHistory> out;
  for (const Interaction& r : log.records) {
    if (r.label != 1 || !filter(r)) continue;
    UserHistory& h = out[r.user_id];
    h.user_id = r.user_id;
    h.article_ids.push_back(r.article_id);
  }
  return out;
}

}  // namespace biasaudit

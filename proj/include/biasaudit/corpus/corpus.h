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


#ifndef BIASAUDIT_CORPUS_CORPUS_H_
#define BIASAUDIT_CORPUS_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biasaudit/corpus/article.h"

namespace biasaudit {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr std::int64_t kDefaultMaxWordCount = 1500;

// corpus manifest: {"schema_version": 1, "questions": {"Q1": "...", ...}}.
// Questions keep their file order.
struct CorpusManifest {
  int schema_version = kManifestSchemaVersion;
  std::vector<QuestionId> questions;
  std::map<QuestionId, std::string> question_texts;

  static CorpusManifest Default();
};

CorpusManifest ParseManifest(std::string_view json_text);
CorpusManifest LoadManifest(const std::filesystem::path& path);
std::string ManifestToJson(const CorpusManifest& manifest);

struct CorpusLoadOptions {
  // When set, articles with word_count above the cap are dropped at load.
  std::optional<std::int64_t> max_word_count;
};

// Immutable, id-indexed article collection.
class Corpus {
 public:
  Corpus() = default;
  // Validates every article against the manifest; throws DuplicateId,
  // UnknownQuestion or MalformedRecord.
  Corpus(CorpusManifest manifest, std::vector<NewsArticle> articles);

  std::size_t size() const { return articles_.size(); }
  bool empty() const { return articles_.empty(); }
  std::span<const NewsArticle> articles() const { return articles_; }
  const CorpusManifest& manifest() const { return manifest_; }
  const std::vector<QuestionId>& questions() const {
    return manifest_.questions;
  }

  const NewsArticle* Find(std::string_view id) const;
  // Throws UnknownArticle.
  const NewsArticle& At(std::string_view id) const;
  std::optional<std::size_t> IndexOf(std::string_view id) const;

  // Article ids in ascending lexicographic order.
  std::vector<std::string> SortedIds() const;

 private:
  CorpusManifest manifest_;
  std::vector<NewsArticle> articles_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Parses corpus.jsonl content. Records may carry "p_p"/"p_n" instead of
// "sentiment_score"; "word_count" defaults to the whitespace word count of
// the body. Errors report the 1-based line number.
Corpus ParseCorpus(std::istream& jsonl, const CorpusManifest& manifest,
                   const CorpusLoadOptions& options = {});
Corpus LoadCorpus(const std::filesystem::path& jsonl_path,
                  const std::filesystem::path& manifest_path,
                  const CorpusLoadOptions& options = {});

void WriteCorpus(const Corpus& corpus, std::ostream& out);

struct SentimentStats {
  double mean = 0.0;
  double median = 0.0;
};

// Mean and median sentiment score; the median of an even count is the
// midpoint of the two central values. Throws EmptyCorpus.
SentimentStats CorpusSentimentStats(const Corpus& corpus);

struct StanceCounts {
  std::int64_t favor = 0;
  std::int64_t against = 0;
};

StanceCounts CountStances(const Corpus& corpus, const QuestionId& q);

// (favor - against) / (favor + against). Throws EmptyCorpus when both are 0.
double StanceAverage(const StanceCounts& counts);
double CorpusStanceAverage(const Corpus& corpus, const QuestionId& q);

inline constexpr std::string_view kInFavorRelation = "geneg:in_favor";
inline constexpr std::string_view kAgainstRelation = "geneg:against";

struct StanceTriple {
  std::string article_id;
  StanceLabel stance;
  QuestionId question;
};

// One triple per (article, question), articles in corpus order and
// questions in manifest order.
std::vector<StanceTriple> StanceTriples(const Corpus& corpus);
void WriteStanceTriples(const Corpus& corpus, std::ostream& out);
// Reads stance_triples.tsv; throws MalformedTriple on bad lines or unknown
// relations.
std::vector<StanceTriple> ParseStanceTriples(std::istream& in);

}  // namespace biasaudit

#endif  // BIASAUDIT_CORPUS_CORPUS_H_

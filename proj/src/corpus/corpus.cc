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


#include "biasaudit/corpus/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"
#include "json.hpp"

namespace biasaudit {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Malformed(std::size_t line, const std::string& reason) {
  throw Error(ErrorCode::kMalformedRecord,
              "line " + std::to_string(line) + ": " + reason);
}

// YYYY-MM-DD, optionally followed by a 'T' or ' ' time part.
bool IsIsoDate(std::string_view s) {
  if (s.size() < 10) return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  if (s[4] != '-' || s[7] != '-') return false;
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  return s.size() == 10 || s[10] == 'T' || s[10] == ' ';
}

std::int64_t WhitespaceWordCount(std::string_view text) {
  std::int64_t count = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    const bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

std::string OptionalString(const Json& record, const char* key,
                           std::size_t line) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return {};
  if (!it->is_string()) Malformed(line, std::string(key) + " must be a string");
  return it->get<std::string>();
}

NewsArticle ParseArticle(const Json& record, const CorpusManifest& manifest,
                         std::size_t line) {
  if (!record.is_object()) Malformed(line, "record is not a JSON object");
  NewsArticle a;

  auto id = record.find("id");
  if (id == record.end() || !id->is_string() ||
      id->get<std::string>().empty()) {
    Malformed(line, "missing or empty id");
  }
  a.id = id->get<std::string>();
  a.title = OptionalString(record, "title", line);
  a.body = OptionalString(record, "body", line);
  a.outlet = OptionalString(record, "outlet", line);
  a.published_at = OptionalString(record, "published_at", line);
  if (!a.published_at.empty() && !IsIsoDate(a.published_at)) {
    Malformed(line, "published_at is not an ISO-8601 date: " + a.published_at);
  }

  auto score = record.find("sentiment_score");
  auto pp = record.find("p_p");
  auto pn = record.find("p_n");
  if (score != record.end() && !score->is_null()) {
    if (!score->is_number()) Malformed(line, "sentiment_score must be a number");
    a.sentiment_score = score->get<double>();
    if (!std::isfinite(a.sentiment_score) || a.sentiment_score < -1.0 ||
        a.sentiment_score > 1.0) {
      Malformed(line, "sentiment_score outside [-1, 1]: " +
                          std::to_string(a.sentiment_score));
    }
  } else if (pp != record.end() && pn != record.end() && pp->is_number() &&
             pn->is_number()) {
    try {
      a.sentiment_score =
          SentimentScoreFromProbs(pp->get<double>(), pn->get<double>());
    } catch (const Error& e) {
      Malformed(line, e.what());
    }
  } else {
    Malformed(line, "needs sentiment_score or both p_p and p_n");
  }

  auto stances = record.find("stances");
  if (stances == record.end() || !stances->is_object()) {
    Malformed(line, "missing stances object");
  }
  for (auto it = stances->begin(); it != stances->end(); ++it) {
    QuestionId q(it.key());
    if (std::find(manifest.questions.begin(), manifest.questions.end(), q) ==
        manifest.questions.end()) {
      throw Error(ErrorCode::kUnknownQuestion,
                  "line " + std::to_string(line) + ": " + it.key());
    }
    if (!it->is_string()) Malformed(line, "stance must be a string");
    auto label = ParseStanceLabel(it->get<std::string>());
    if (!label) {
      Malformed(line, "stance for " + it.key() + " must be favor or against");
    }
    a.stances.emplace(std::move(q), *label);
  }

  auto entities = record.find("entity_ids");
  if (entities != record.end() && !entities->is_null()) {
    if (!entities->is_array()) Malformed(line, "entity_ids must be an array");
    for (const auto& e : *entities) {
      if (!e.is_string()) Malformed(line, "entity_ids must hold strings");
      a.entity_ids.push_back(e.get<std::string>());
    }
  }

  auto wc = record.find("word_count");
  if (wc != record.end() && !wc->is_null()) {
    if (!wc->is_number_integer() || wc->get<std::int64_t>() < 0) {
      Malformed(line, "word_count must be a nonnegative integer");
    }
    a.word_count = wc->get<std::int64_t>();
  } else {
    a.word_count = WhitespaceWordCount(a.body);
  }
  return a;
}

}  // namespace

CorpusManifest CorpusManifest::Default() {
  CorpusManifest m;
  m.questions = DefaultQuestions();
  for (const auto& q : m.questions) m.question_texts[q] = q.value();
  return m;
}

CorpusManifest ParseManifest(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("manifest: ") + e.what());
  }
  CorpusManifest m;
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "manifest: not an object");
  }
  m.schema_version = doc.value("schema_version", kManifestSchemaVersion);
  if (m.schema_version != kManifestSchemaVersion) {
    throw Error(ErrorCode::kMalformedRecord,
                "manifest: unsupported schema_version " +
                    std::to_string(m.schema_version));
  }
  auto questions = doc.find("questions");
  if (questions == doc.end() || !questions->is_object() ||
      questions->empty()) {
    throw Error(ErrorCode::kMalformedRecord,
                "manifest: questions must be a nonempty object");
  }
  for (auto it = questions->begin(); it != questions->end(); ++it) {
    if (!it->is_string()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "manifest: question text must be a string");
    }
    QuestionId q(it.key());
    m.questions.push_back(q);
    m.question_texts[q] = it->get<std::string>();
  }
  return m;
}

CorpusManifest LoadManifest(const std::filesystem::path& path) {
  return ParseManifest(ReadFile(path));
}

std::string ManifestToJson(const CorpusManifest& manifest) {
  Json doc;
  doc["schema_version"] = manifest.schema_version;
  Json questions = Json::object();
  for (const auto& q : manifest.questions) {
    questions[q.value()] = manifest.question_texts.at(q);
  }
  doc["questions"] = std::move(questions);
  return doc.dump(2) + "\n";
}

Corpus::Corpus(CorpusManifest manifest, std::vector<NewsArticle> articles)
    : manifest_(std::move(manifest)), articles_(std::move(articles)) {
  index_.reserve(articles_.size());
  for (std::size_t i = 0; i < articles_.size(); ++i) {
    const NewsArticle& a = articles_[i];
    if (!index_.emplace(a.id, i).second) {
      throw Error(ErrorCode::kDuplicateId, a.id);
    }
    if (!(a.sentiment_score >= -1.0 && a.sentiment_score <= 1.0)) {
      throw Error(ErrorCode::kMalformedRecord,
                  a.id + ": sentiment_score outside [-1, 1]");
    }
    for (const auto& [q, label] : a.stances) {
      if (std::find(manifest_.questions.begin(), manifest_.questions.end(),
                    q) == manifest_.questions.end()) {
        throw Error(ErrorCode::kUnknownQuestion, a.id + ": " + q.value());
      }
    }
    for (const auto& q : manifest_.questions) {
      if (!a.stances.contains(q)) {
        throw Error(ErrorCode::kMalformedRecord,
                    a.id + ": missing stance for " + q.value());
      }
    }
  }
}

const NewsArticle* Corpus::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &articles_[it->second];
}

const NewsArticle& Corpus::At(std::string_view id) const {
  const NewsArticle* a = Find(id);
  if (a == nullptr) throw Error(ErrorCode::kUnknownArticle, std::string(id));
  return *a;
}

std::optional<std::size_t> Corpus::IndexOf(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Corpus::SortedIds() const {
  std::vector<std::string> ids;
  ids.reserve(articles_.size());
  for (const auto& a : articles_) ids.push_back(a.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Corpus ParseCorpus(std::istream& jsonl, const CorpusManifest& manifest,
                   const CorpusLoadOptions& options) {
  std::vector<NewsArticle> articles;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(jsonl, raw)) {
    ++line;
    std::string_view text = StripCr(raw);
    if (text.find_first_not_of(" \t") == std::string_view::npos) continue;
    Json record;
    try {
      record = Json::parse(text);
    } catch (const Json::parse_error& e) {
      Malformed(line, e.what());
    }
    NewsArticle a = ParseArticle(record, manifest, line);
    for (const auto& q : manifest.questions) {
      if (!a.stances.contains(q)) {
        Malformed(line, "missing stance for " + q.value());
      }
    }
    if (!seen.insert(a.id).second) throw Error(ErrorCode::kDuplicateId, a.id);
    if (options.max_word_count && a.word_count > *options.max_word_count) {
      continue;
    }
    articles.push_back(std::move(a));
  }
  return Corpus(manifest, std::move(articles));
}

Corpus LoadCorpus(const std::filesystem::path& jsonl_path,
                  const std::filesystem::path& manifest_path,
                  const CorpusLoadOptions& options) {
  CorpusManifest manifest = LoadManifest(manifest_path);
  std::ifstream in = OpenInput(jsonl_path);
  return ParseCorpus(in, manifest, options);
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const NewsArticle& a : corpus.articles()) {
    Json record;
    record["id"] = a.id;
    record["title"] = a.title;
    record["body"] = a.body;
    record["outlet"] = a.outlet;
    record["published_at"] = a.published_at;
    record["sentiment_score"] = a.sentiment_score;
    Json stances = Json::object();
    for (const auto& q : corpus.questions()) {
      stances[q.value()] = std::string(StanceLabelName(a.stance(q)));
    }
    record["stances"] = std::move(stances);
    record["entity_ids"] = a.entity_ids;
    record["word_count"] = a.word_count;
    out << record.dump() << '\n';
  }
}

SentimentStats CorpusSentimentStats(const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no articles");
  std::vector<double> scores;
  scores.reserve(corpus.size());
  double sum = 0.0;
  for (const auto& a : corpus.articles()) {
    scores.push_back(a.sentiment_score);
    sum += a.sentiment_score;
  }
  std::sort(scores.begin(), scores.end());
  const std::size_t n = scores.size();
  SentimentStats stats;
  stats.mean = sum / static_cast<double>(n);
  stats.median = n % 2 == 1 ? scores[n / 2]
                            : 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
  return stats;
}

StanceCounts CountStances(const Corpus& corpus, const QuestionId& q) {
  StanceCounts counts;
  for (const auto& a : corpus.articles()) {
    if (a.stance(q) == StanceLabel::kFavor) {
      ++counts.favor;
    } else {
      ++counts.against;
    }
  }
  return counts;
}

double StanceAverage(const StanceCounts& counts) {
  const std::int64_t total = counts.favor + counts.against;
  if (total <= 0) throw Error(ErrorCode::kEmptyCorpus, "no stance labels");
  return static_cast<double>(counts.favor - counts.against) /
         static_cast<double>(total);
}

double CorpusStanceAverage(const Corpus& corpus, const QuestionId& q) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no articles");
  return StanceAverage(CountStances(corpus, q));
}

std::vector<StanceTriple> StanceTriples(const Corpus& corpus) {
  std::vector<StanceTriple> triples;
  triples.reserve(corpus.size() * corpus.questions().size());
  for (const auto& a : corpus.articles()) {
    for (const auto& q : corpus.questions()) {
      triples.push_back({a.id, a.stance(q), q});
    }
  }
  return triples;
}

void WriteStanceTriples(const Corpus& corpus, std::ostream& out) {
  for (const auto& t : StanceTriples(corpus)) {
    out << t.article_id << '\t'
        << (t.stance == StanceLabel::kFavor ? kInFavorRelation
                                            : kAgainstRelation)
        << '\t' << t.question.value() << '\n';
  }
}

std::vector<StanceTriple> ParseStanceTriples(std::istream& in) {
  std::vector<StanceTriple> triples;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = StripCr(raw);
    if (text.empty()) continue;
    auto fields = SplitFields(text, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[2].empty()) {
      throw Error(ErrorCode::kMalformedTriple, "line " + std::to_string(line));
    }
    StanceLabel label;
    if (fields[1] == kInFavorRelation) {
      label = StanceLabel::kFavor;
    } else if (fields[1] == kAgainstRelation) {
      label = StanceLabel::kAgainst;
    } else {
      throw Error(ErrorCode::kMalformedTriple,
                  "line " + std::to_string(line) + ": unknown relation " +
                      std::string(fields[1]));
    }
    triples.push_back(
        {std::string(fields[0]), label, QuestionId(std::string(fields[2]))});
  }
  return triples;
}

}  // namespace biasaudit

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


#include "biasaudit/recommenders/embedding.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"
#include "biasaudit/recommenders/tfidf.h"
#include "biasaudit/recommenders/tokenizer.h"
#include "biasaudit/simd/kernels.h"

namespace biasaudit {
namespace {

[[noreturn]] void Malformed(std::string_view file, std::size_t line,
                            const std::string& reason) {
  throw Error(ErrorCode::kMalformedRecord, std::string(file) + " line " +
                                               std::to_string(line) + ": " +
                                               reason);
}

bool ParseDouble(std::string_view s, double* out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end && std::isfinite(*out);
}

void CheckDim(std::size_t actual, std::size_t expected) {
  if (expected != 0 && actual != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding dim " + std::to_string(actual) + ", expected " +
                    std::to_string(expected));
  }
}

}  // namespace

bool WordEmbeddings::Add(std::string_view token,
                         std::span<const double> values) {
  if (values.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(token));
  }
  auto [it, inserted] = index_.emplace(LowercaseUtf8(token), size());
  if (!inserted) return false;
  data_.insert(data_.end(), values.begin(), values.end());
  return true;
}

std::span<const double> WordEmbeddings::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return {};
  return std::span<const double>(data_).subspan(it->second * dim_, dim_);
}

WordEmbeddings ParseWordVectors(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw)) Malformed(".vec", 1, "missing header");
  std::istringstream header{std::string(StripCr(raw))};
  long long count = -1;
  long long dim = -1;
  if (!(header >> count >> dim) || count < 0 || dim <= 0) {
    Malformed(".vec", 1, "header must be 'count dim'");
  }
  WordEmbeddings table(static_cast<std::size_t>(dim));
  std::vector<double> values(static_cast<std::size_t>(dim));
  std::size_t line = 1;
  long long rows = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = StripCr(raw);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) continue;
    auto fields = SplitFields(text, ' ');
    if (fields.size() != values.size() + 1 || fields[0].empty()) {
      Malformed(".vec", line,
                "expected token and " + std::to_string(dim) + " values");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!ParseDouble(fields[i + 1], &values[i])) {
        Malformed(".vec", line, "bad number");
      }
    }
    table.Add(fields[0], values);
    ++rows;
  }
  if (rows != count) {
    Malformed(".vec", line,
              "header declares " + std::to_string(count) + " rows, found " +
                  std::to_string(rows));
  }
  return table;
}

WordEmbeddings LoadWordVectors(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ParseWordVectors(in);
}

SentenceEmbeddings ParseSentenceVectors(std::istream& in) {
  SentenceEmbeddings out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = StripCr(raw);
    if (text.empty()) continue;
    auto fields = SplitFields(text, '\t');
    if (fields.size() != 3 || fields[0].empty()) {
      Malformed("sentence_vectors", line, "expected 3 tab-separated fields");
    }
    int sentence = 0;
    auto [ptr, ec] = std::from_chars(
        fields[1].data(), fields[1].data() + fields[1].size(), sentence);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size() ||
        sentence < 0) {
      Malformed("sentence_vectors", line, "bad sentence index");
    }
    std::vector<double> values;
    for (std::string_view v : SplitFields(fields[2], ',')) {
      double x;
      if (!ParseDouble(v, &x)) Malformed("sentence_vectors", line, "bad number");
      values.push_back(x);
    }
    if (out.dim == 0) out.dim = values.size();
    if (values.size() != out.dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "sentence_vectors line " + std::to_string(line));
    }
    auto& sentences = out.by_article[std::string(fields[0])];
    if (!sentences.emplace(sentence, std::move(values)).second) {
      Malformed("sentence_vectors", line, "duplicate sentence index");
    }
  }
  return out;
}

SentenceEmbeddings LoadSentenceVectors(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ParseSentenceVectors(in);
}

VectorTable EmbedAverageWords(const Corpus& corpus,
                              const WordEmbeddings& embeddings,
                              std::size_t expected_dim) {
  CheckDim(embeddings.dim(), expected_dim);
  const std::size_t dim = embeddings.dim();
  VectorTable table(dim, /*sparse=*/false);
  for (const NewsArticle& a : corpus.articles()) {
    DenseVector v(dim, 0.0);
    std::size_t hits = 0;
    for (const std::string& token : Tokenize(ArticleText(a))) {
      auto e = embeddings.Find(token);
      if (e.empty()) continue;
      simd::Axpy(1.0, e, v);
      ++hits;
    }
    if (hits > 0) simd::Scale(1.0 / static_cast<double>(hits), v);
    table.Add(ArticleVector{a.id, std::move(v), dim});
  }
  return table;
}

VectorTable EmbedAverageSentences(const Corpus& corpus,
                                  const SentenceEmbeddings& sentences,
                                  std::size_t expected_dim) {
  const std::size_t dim = sentences.dim;
  if (dim == 0 && !corpus.empty()) {
    throw Error(ErrorCode::kMissingEmbedding, corpus.articles()[0].id);
  }
  CheckDim(dim, expected_dim);
  VectorTable table(dim, /*sparse=*/false);
  for (const NewsArticle& a : corpus.articles()) {
    auto it = sentences.by_article.find(a.id);
    if (it == sentences.by_article.end() || it->second.empty()) {
      throw Error(ErrorCode::kMissingEmbedding, a.id);
    }
    DenseVector v(dim, 0.0);
    for (const auto& [index, values] : it->second) simd::Axpy(1.0, values, v);
    simd::Scale(1.0 / static_cast<double>(it->second.size()), v);
    table.Add(ArticleVector{a.id, std::move(v), dim});
  }
  return table;
}

}  // namespace biasaudit

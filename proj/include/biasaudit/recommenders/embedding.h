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


#ifndef BIASAUDIT_RECOMMENDERS_EMBEDDING_H_
#define BIASAUDIT_RECOMMENDERS_EMBEDDING_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biasaudit/corpus/corpus.h"
#include "biasaudit/recommenders/vectors.h"

namespace biasaudit {

inline constexpr std::size_t kWordEmbeddingDim = 300;
inline constexpr std::size_t kSentenceEmbeddingDim = 768;

// Word-embedding table in fastText .vec text format: a "count dim" header,
// then "token v1 ... v_dim" per line. Tokens are lowercased on load to
// match the tokenizer; the first occurrence of a lowercased token wins.
class WordEmbeddings {
 public:
  explicit WordEmbeddings(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  // Returns false if the (lowercased) token is already present.
  bool Add(std::string_view token, std::span<const double> values);
  // Empty span for out-of-vocabulary tokens.
  std::span<const double> Find(std::string_view token) const;

 private:
  std::size_t dim_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

WordEmbeddings ParseWordVectors(std::istream& in);
WordEmbeddings LoadWordVectors(const std::filesystem::path& path);

// sentence_vectors.tsv: article_id<TAB>sentence_index<TAB>v1,...,v_dim.
struct SentenceEmbeddings {
  std::size_t dim = 0;
  // Sentences per article ordered by sentence_index.
  std::map<std::string, std::map<int, std::vector<double>>> by_article;
};

SentenceEmbeddings ParseSentenceVectors(std::istream& in);
SentenceEmbeddings LoadSentenceVectors(const std::filesystem::path& path);

// Unweighted mean of the embeddings of every in-vocabulary token occurrence;
// the zero vector when no token is in vocabulary. `expected_dim` of 0
// accepts the table's dimension; otherwise a differing table dimension
// throws DimensionMismatch.
VectorTable EmbedAverageWords(const Corpus& corpus,
                              const WordEmbeddings& embeddings,
                              std::size_t expected_dim = kWordEmbeddingDim);

// Mean of each article's sentence vectors. Throws MissingEmbedding for an
// article with no sentences, DimensionMismatch as above.
VectorTable EmbedAverageSentences(const Corpus& corpus,
                                  const SentenceEmbeddings& sentences,
                                  std::size_t expected_dim =
                                      kSentenceEmbeddingDim);

}  // namespace biasaudit

#endif  // BIASAUDIT_RECOMMENDERS_EMBEDDING_H_

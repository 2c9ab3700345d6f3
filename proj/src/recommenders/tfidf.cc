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


#include "biasaudit/recommenders/tfidf.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>

#include "biasaudit/common/error.h"
#include "biasaudit/recommenders/tokenizer.h"
#include "biasaudit/simd/kernels.h"

namespace biasaudit {

std::string ArticleText(const NewsArticle& article) {
  return article.title + " " + article.body;
}

VectorTable TfidfVectorize(const Corpus& corpus, const TfidfConfig& config,
                           TfidfModel* model) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "tf-idf");
  if (config.ngram_min < 1 || config.ngram_max < config.ngram_min) {
    throw Error(ErrorCode::kInvalidArgument, "bad n-gram range");
  }

  // Per-document term counts, then document frequencies.
  std::vector<std::map<std::string, std::int64_t>> counts(corpus.size());
  std::map<std::string, std::int64_t> df;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const auto tokens = Tokenize(ArticleText(corpus.articles()[d]));
    for (auto& gram : NGrams(tokens, config.ngram_min, config.ngram_max)) {
      ++counts[d][std::move(gram)];
    }
    for (const auto& [term, c] : counts[d]) ++df[term];
  }
  if (df.size() >
      static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary too large");
  }

  const double n_docs = static_cast<double>(corpus.size());
  std::vector<std::string> terms;
  std::vector<double> idf;
  std::unordered_map<std::string, std::uint32_t> term_index;
  terms.reserve(df.size());
  idf.reserve(df.size());
  term_index.reserve(df.size());
  for (const auto& [term, freq] : df) {
    term_index.emplace(term, static_cast<std::uint32_t>(terms.size()));
    terms.push_back(term);
    idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(freq))) +
                  1.0);
  }

  VectorTable table(terms.size(), /*sparse=*/true);
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    SparseVector v;
    v.indices.reserve(counts[d].size());
    v.values.reserve(counts[d].size());
    // std::map iteration is lexicographic, matching index order.
    for (const auto& [term, c] : counts[d]) {
      const std::uint32_t idx = term_index.at(term);
      v.indices.push_back(idx);
      v.values.push_back(static_cast<double>(c) * idf[idx]);
    }
    if (config.l2_normalize) {
      const double norm = std::sqrt(simd::SquaredNorm(v.values));
      if (norm > 0.0) simd::Scale(1.0 / norm, v.values);
    }
    table.Add(ArticleVector{corpus.articles()[d].id, std::move(v), terms.size()});
  }
  if (model != nullptr) {
    model->terms = std::move(terms);
    model->idf = std::move(idf);
    model->num_documents = corpus.size();
  }
  return table;
}

}  // namespace biasaudit

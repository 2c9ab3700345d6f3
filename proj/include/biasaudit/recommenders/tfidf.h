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


#ifndef BIASAUDIT_RECOMMENDERS_TFIDF_H_
#define BIASAUDIT_RECOMMENDERS_TFIDF_H_

#include <string>
#include <vector>

#include "biasaudit/corpus/corpus.h"
#include "biasaudit/recommenders/vectors.h"

namespace biasaudit {

struct TfidfConfig {
  int ngram_min = 1;
  int ngram_max = 2;
  bool l2_normalize = true;
};

struct TfidfModel {
  // Terms sorted lexicographically; vector index i refers to terms[i].
  std::vector<std::string> terms;
  std::vector<double> idf;
  std::size_t num_documents = 0;
};

// tf = raw n-gram count over the tokenized "title body" text,
// idf = ln((1 + N) / (1 + df)) + 1, vector = tf * idf, optionally scaled to
// unit L2 norm. The vocabulary is every n-gram in the corpus. Throws
// EmptyCorpus.
VectorTable TfidfVectorize(const Corpus& corpus, const TfidfConfig& config = {},
                           TfidfModel* model = nullptr);

// Text the vectorizers read from an article.
std::string ArticleText(const NewsArticle& article);

}  // namespace biasaudit

#endif  // BIASAUDIT_RECOMMENDERS_TFIDF_H_

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


#ifndef BIASAUDIT_SIM_SYNTHETIC_H_
#define BIASAUDIT_SIM_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/knowledge_graph.h"
#include "biasaudit/recommenders/embedding.h"

namespace biasaudit {

// Parameters of the synthetic news corpus. Every article has a latent side
// (+1/-1, half of the articles each); its stance on each question equals the
// side except for independent flips with probability `label_flip`. Text,
// entities and embeddings all carry the side, so content similarity tracks
// stance.
struct SyntheticCorpusConfig {
  std::size_t n_articles = 240;
  std::vector<QuestionId> questions = DefaultQuestions();
  int title_words = 5;
  int body_words = 60;
  int words_per_sentence = 10;
  double stance_word_share = 0.35;
  double sentiment_word_share = 0.15;
  double topic_word_share = 0.3;
  double label_flip = 0.1;
  int n_topics = 6;
  int stance_vocabulary = 40;     // per side
  int sentiment_vocabulary = 30;  // per polarity
  int topic_vocabulary = 30;      // per topic
  int common_vocabulary = 60;
  int side_entities = 16;   // per side
  int topic_entities = 6;   // per topic
  double unlinked_entity_rate = 0.1;  // chance of one entity absent from the KG
  std::size_t word_dim = kWordEmbeddingDim;
  std::size_t sentence_dim = kSentenceEmbeddingDim;
  std::uint64_t rng_seed = 0;
};

struct WordVectorRow {
  std::string token;
  std::vector<double> values;
};

struct SyntheticData {
  Corpus corpus;
  KnowledgeGraph kg;
  std::vector<WordVectorRow> word_rows;  // .vec rows in vocabulary order
  WordEmbeddings words{0};
  SentenceEmbeddings sentences;
  // Latent side per article, in corpus order.
  std::vector<int> sides;
};

// Deterministic for a fixed config.
SyntheticData GenerateSyntheticData(const SyntheticCorpusConfig& config);

void WriteWordVectors(std::span<const WordVectorRow> rows, std::size_t dim,
                      std::ostream& out);
void WriteSentenceVectors(const SentenceEmbeddings& sentences,
                          std::ostream& out);

// Writes corpus.jsonl, corpus_manifest.json, kg.tsv, word_vectors.vec and
// sentence_vectors.tsv under `dir`; returns the written paths.
std::vector<std::filesystem::path> WriteSyntheticData(
    const SyntheticData& data, const std::filesystem::path& dir);

}  // namespace biasaudit

#endif  // BIASAUDIT_SIM_SYNTHETIC_H_

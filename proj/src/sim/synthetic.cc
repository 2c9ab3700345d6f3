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


#include "biasaudit/sim/synthetic.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"
#include "biasaudit/common/random.h"
#include "biasaudit/recommenders/tokenizer.h"
#include "fmt/format.h"

namespace biasaudit {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

// Unique pronounceable tokens of 2 to 4 syllables.
class WordFactory {
 public:
  explicit WordFactory(Rng& rng) : rng_(rng) {}

  std::vector<std::string> Make(int count) {
    std::vector<std::string> out;
    std::uniform_int_distribution<int> syllables(2, 4);
    std::uniform_int_distribution<std::size_t> c(0, kConsonants.size() - 1);
    std::uniform_int_distribution<std::size_t> v(0, kVowels.size() - 1);
    while (static_cast<int>(out.size()) < count) {
      std::string w;
      const int n = syllables(rng_);
      for (int s = 0; s < n; ++s) {
        w += kConsonants[c(rng_)];
        w += kVowels[v(rng_)];
      }
      if (used_.insert(w).second) out.push_back(std::move(w));
    }
    return out;
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

std::vector<double> RandomUnit(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = normal(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

// Word semantics shared by both embedding spaces.
struct WordInfo {
  enum class Group { kStance, kSentiment, kTopic, kCommon };
  Group group = Group::kCommon;
  int sign = 0;   // stance side or sentiment polarity
  int topic = -1;
};

class EmbeddingSpace {
 public:
  EmbeddingSpace(std::size_t dim, int n_topics, Rng& rng)
      : dim_(dim),
        stance_(RandomUnit(dim, rng)),
        sentiment_(RandomUnit(dim, rng)) {
    for (int t = 0; t < n_topics; ++t) topics_.push_back(RandomUnit(dim, rng));
  }

  std::vector<double> Embed(const WordInfo& info, Rng& rng) const {
    std::normal_distribution<double> noise(0.0, 1.0 / std::sqrt(dim_));
    std::vector<double> v(dim_);
    for (double& x : v) x = noise(rng);
    const std::vector<double>* dir = nullptr;
    double weight = 0.0;
    switch (info.group) {
      case WordInfo::Group::kStance:
        dir = &stance_;
        weight = 2.0 * info.sign;
        break;
      case WordInfo::Group::kSentiment:
        dir = &sentiment_;
        weight = 1.5 * info.sign;
        break;
      case WordInfo::Group::kTopic:
        dir = &topics_[static_cast<std::size_t>(info.topic)];
        weight = 1.5;
        break;
      case WordInfo::Group::kCommon:
        break;
    }
    if (dir != nullptr) {
      for (std::size_t i = 0; i < dim_; ++i) v[i] += weight * (*dir)[i];
    }
    return v;
  }

 private:
  std::size_t dim_;
  std::vector<double> stance_;
  std::vector<double> sentiment_;
  std::vector<std::vector<double>> topics_;
};

template <typename T>
const T& Pick(const std::vector<T>& items, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

SyntheticData GenerateSyntheticData(const SyntheticCorpusConfig& config) {
  Require(config.n_articles > 0, "n_articles must be positive");
  Require(!config.questions.empty(), "at least one question is required");
  Require(config.title_words > 0 && config.body_words > 0 &&
              config.words_per_sentence > 0,
          "word counts must be positive");
  Require(config.n_topics > 0 && config.stance_vocabulary > 0 &&
              config.sentiment_vocabulary > 0 && config.topic_vocabulary > 0 &&
              config.common_vocabulary > 0,
          "vocabulary sizes must be positive");
  Require(config.side_entities >= 2 && config.topic_entities >= 2,
          "entity clusters need at least two members");
  Require(config.stance_word_share >= 0 && config.sentiment_word_share >= 0 &&
              config.topic_word_share >= 0 &&
              config.stance_word_share + config.sentiment_word_share +
                      config.topic_word_share <= 1.0,
          "word shares must be nonnegative and sum to at most 1");
  Require(config.word_dim > 0 && config.sentence_dim > 0,
          "embedding dimensions must be positive");

  Rng rng = DeriveRng(config.rng_seed, std::string_view("synthetic-corpus"));
  WordFactory factory(rng);

  // Vocabulary.
  std::vector<std::string> tokens;
  std::vector<WordInfo> infos;
  auto add_group = [&](int count, WordInfo info) {
    std::vector<std::size_t> ids;
    for (auto& w : factory.Make(count)) {
      ids.push_back(tokens.size());
      tokens.push_back(std::move(w));
      infos.push_back(info);
    }
    return ids;
  };
  using Group = WordInfo::Group;
  const auto favor_words = add_group(config.stance_vocabulary, {Group::kStance, +1, -1});
  const auto against_words = add_group(config.stance_vocabulary, {Group::kStance, -1, -1});
  const auto positive_words =
      add_group(config.sentiment_vocabulary, {Group::kSentiment, +1, -1});
  const auto negative_words =
      add_group(config.sentiment_vocabulary, {Group::kSentiment, -1, -1});
  std::vector<std::vector<std::size_t>> topic_words;
  for (int t = 0; t < config.n_topics; ++t) {
    topic_words.push_back(add_group(config.topic_vocabulary, {Group::kTopic, 0, t}));
  }
  const auto common_words = add_group(config.common_vocabulary, {Group::kCommon, 0, -1});

  // Entities and knowledge graph.
  auto entity_names = [](int base, int count) {
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) out.push_back(fmt::format("E{}", base + i));
    return out;
  };
  const auto favor_entities = entity_names(1000, config.side_entities);
  const auto against_entities = entity_names(2000, config.side_entities);
  std::vector<std::vector<std::string>> topic_entities;
  for (int t = 0; t < config.n_topics; ++t) {
    topic_entities.push_back(entity_names(3000 + 100 * t, config.topic_entities));
  }
  const std::vector<std::string> relation_names = {
      "rel:associated_with", "rel:member_of", "rel:located_in", "rel:covers"};

  struct NamedTriple {
    std::string head, relation, tail;
  };
  std::vector<NamedTriple> named;
  auto link_cluster = [&](const std::vector<std::string>& cluster, int degree) {
    std::uniform_int_distribution<std::size_t> rel(0, 2);
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      std::set<std::size_t> targets;
      while (static_cast<int>(targets.size()) <
             std::min<int>(degree, static_cast<int>(cluster.size()) - 1)) {
        std::uniform_int_distribution<std::size_t> pick(0, cluster.size() - 1);
        const std::size_t j = pick(rng);
        if (j != i) targets.insert(j);
      }
      for (std::size_t j : targets) {
        named.push_back({cluster[i], relation_names[rel(rng)], cluster[j]});
      }
    }
  };
  link_cluster(favor_entities, 3);
  link_cluster(against_entities, 3);
  for (const auto& cluster : topic_entities) link_cluster(cluster, 2);
  // Sparse bridges from side clusters into topics.
  for (const auto* side : {&favor_entities, &against_entities}) {
    for (std::size_t i = 0; i < side->size(); i += 4) {
      const auto& topic = Pick(topic_entities, rng);
      named.push_back({(*side)[i], relation_names[3], Pick(topic, rng)});
    }
  }
  Vocabulary entities;
  Vocabulary relations;
  std::vector<Triple> triples;
  for (const auto& t : named) {
    const auto h = entities.Intern(t.head);
    const auto r = relations.Intern(t.relation);
    const auto tl = entities.Intern(t.tail);
    triples.push_back({h, r, tl});
  }

  // Embedding spaces and per-token vectors.
  SyntheticData data;
  EmbeddingSpace word_space(config.word_dim, config.n_topics, rng);
  EmbeddingSpace sentence_space(config.sentence_dim, config.n_topics, rng);
  data.words = WordEmbeddings(config.word_dim);
  std::vector<std::vector<double>> sentence_word_vectors;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    WordVectorRow row{tokens[i], word_space.Embed(infos[i], rng)};
    data.words.Add(row.token, row.values);
    data.word_rows.push_back(std::move(row));
    sentence_word_vectors.push_back(sentence_space.Embed(infos[i], rng));
  }

  // Articles.
  const std::vector<std::string> outlets = {"Morgenblatt", "Tagesbote",
                                            "Rundschau",   "Kurier",
                                            "Abendpost",   "Stadtanzeiger"};
  std::bernoulli_distribution flip(config.label_flip);
  std::bernoulli_distribution unlinked(config.unlinked_entity_rate);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> topic_pick(0, config.n_topics - 1);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<int> day(1, 28);
  const double stance_cut = config.stance_word_share;
  const double sentiment_cut = stance_cut + config.sentiment_word_share;
  const double topic_cut = sentiment_cut + config.topic_word_share;

  // Exactly balanced sides, in shuffled order.
  std::vector<int> sides(config.n_articles);
  for (std::size_t a = 0; a < sides.size(); ++a) sides[a] = a % 2 == 0 ? 1 : -1;
  std::shuffle(sides.begin(), sides.end(), rng);

  std::vector<NewsArticle> articles;
  data.sentences.dim = config.sentence_dim;
  const int width = static_cast<int>(std::to_string(config.n_articles).size());
  for (std::size_t a = 0; a < config.n_articles; ++a) {
    const int side = sides[a];
    const int topic = topic_pick(rng);
    // Negative-leaning sentiment: positive share u^1.3 of the polar mass.
    const double neutral = 0.1 + 0.5 * unit(rng);
    const double positive_share = std::pow(unit(rng), 1.3);
    const double p_p = (1.0 - neutral) * positive_share;
    const double p_n = (1.0 - neutral) * (1.0 - positive_share);

    auto draw_word = [&]() -> std::size_t {
      const double u = unit(rng);
      if (u < stance_cut) return Pick(side > 0 ? favor_words : against_words, rng);
      if (u < sentiment_cut) {
        return Pick(unit(rng) < positive_share ? positive_words : negative_words,
                    rng);
      }
      if (u < topic_cut) return Pick(topic_words[static_cast<std::size_t>(topic)], rng);
      return Pick(common_words, rng);
    };

    NewsArticle article;
    article.id = fmt::format("a{:0{}}", a + 1, width);
    std::vector<std::string> title;
    for (int w = 0; w < config.title_words; ++w) title.push_back(tokens[draw_word()]);
    title[0][0] = static_cast<char>(std::toupper(static_cast<unsigned char>(title[0][0])));
    for (std::size_t w = 0; w < title.size(); ++w) {
      article.title += (w == 0 ? "" : " ") + title[w];
    }

    std::map<int, std::vector<double>> sentence_vectors;
    std::vector<double> current(config.sentence_dim, 0.0);
    int in_sentence = 0;
    int sentence_index = 0;
    for (int w = 0; w < config.body_words; ++w) {
      const std::size_t id = draw_word();
      std::string word = tokens[id];
      if (in_sentence == 0) {
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      }
      article.body += (w == 0 ? "" : " ") + word;
      for (std::size_t i = 0; i < config.sentence_dim; ++i) {
        current[i] += sentence_word_vectors[id][i];
      }
      ++in_sentence;
      if (in_sentence == config.words_per_sentence || w + 1 == config.body_words) {
        article.body += ".";
        for (double& x : current) x /= in_sentence;
        sentence_vectors[sentence_index++] = current;
        std::fill(current.begin(), current.end(), 0.0);
        in_sentence = 0;
      }
    }
    data.sentences.by_article[article.id] = std::move(sentence_vectors);

    article.outlet = Pick(outlets, rng);
    article.published_at = fmt::format("2021-{:02}-{:02}", month(rng), day(rng));
    article.sentiment_score = SentimentScoreFromProbs(p_p, p_n);
    for (const auto& q : config.questions) {
      const int label = flip(rng) ? -side : side;
      article.stances[q] = label > 0 ? StanceLabel::kFavor : StanceLabel::kAgainst;
    }
    const auto& cluster = side > 0 ? favor_entities : against_entities;
    std::set<std::string> chosen;
    while (chosen.size() < 2) chosen.insert(Pick(cluster, rng));
    chosen.insert(Pick(topic_entities[static_cast<std::size_t>(topic)], rng));
    article.entity_ids.assign(chosen.begin(), chosen.end());
    if (unlinked(rng)) article.entity_ids.push_back(fmt::format("E9{:03}", a % 1000));
    article.word_count = config.body_words;
    articles.push_back(std::move(article));
    data.sides.push_back(side);
  }

  CorpusManifest manifest;
  manifest.questions = config.questions;
  for (const auto& q : config.questions) {
    manifest.question_texts[q] = "Synthetic question " + q.value() + "?";
  }
  data.corpus = Corpus(std::move(manifest), std::move(articles));
  data.kg = KnowledgeGraph(std::move(entities), std::move(relations),
                           std::move(triples));
  return data;
}

void WriteWordVectors(std::span<const WordVectorRow> rows, std::size_t dim,
                      std::ostream& out) {
  out << rows.size() << ' ' << dim << '\n';
  out << std::setprecision(9);
  for (const auto& row : rows) {
    out << row.token;
    for (double v : row.values) out << ' ' << v;
    out << '\n';
  }
}

void WriteSentenceVectors(const SentenceEmbeddings& sentences,
                          std::ostream& out) {
  out << std::setprecision(9);
  for (const auto& [article, by_index] : sentences.by_article) {
    for (const auto& [index, values] : by_index) {
      out << article << '\t' << index << '\t';
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i == 0 ? "" : ",") << values[i];
      }
      out << '\n';
    }
  }
}

std::vector<std::filesystem::path> WriteSyntheticData(
    const SyntheticData& data, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, auto&& writer) {
    const auto path = dir / name;
    auto out = OpenOutput(path);
    writer(out);
    if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
    written.push_back(path);
  };
  emit("corpus.jsonl", [&](std::ostream& o) { WriteCorpus(data.corpus, o); });
  emit("corpus_manifest.json",
       [&](std::ostream& o) { o << ManifestToJson(data.corpus.manifest()); });
  emit("kg.tsv", [&](std::ostream& o) { WriteKnowledgeGraph(data.kg, o); });
  emit("word_vectors.vec", [&](std::ostream& o) {
    WriteWordVectors(data.word_rows, data.words.dim(), o);
  });
  emit("sentence_vectors.tsv",
       [&](std::ostream& o) { WriteSentenceVectors(data.sentences, o); });
  return written;
}

}  // namespace biasaudit

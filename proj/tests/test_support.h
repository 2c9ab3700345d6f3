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


#ifndef BIASAUDIT_TESTS_TEST_SUPPORT_H_
#define BIASAUDIT_TESTS_TEST_SUPPORT_H_

#include <unistd.h>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "biasaudit/common/error.h"
#include "biasaudit/corpus/corpus.h"
#include "gtest/gtest.h"

// Expects `stmt` to throw biasaudit::Error with the given ErrorCode.
#define EXPECT_ERROR_CODE(stmt, expected_code)                              \
  do {                                                                     \
    try {                                                                  \
      stmt;                                                                \
      ADD_FAILURE() << "no exception from " #stmt;                         \
    } catch (const ::biasaudit::Error& e) {                                \
      EXPECT_EQ(e.code(), ::biasaudit::ErrorCode::expected_code)           \
          << ::biasaudit::ErrorCodeName(e.code()) << ": " << e.what();     \
    }                                                                      \
  } while (0)

namespace biasaudit::testing {

inline std::filesystem::path Fixture(const std::string& name) {
  return std::filesystem::path(BIASAUDIT_FIXTURE_DIR) / name;
}

inline Corpus LoadFixtureCorpus() {
  return LoadCorpus(Fixture("corpus.jsonl"), Fixture("manifest.json"));
}

// Article with a stance on Q1 only; body defaults to the id.
inline NewsArticle MakeArticle(const std::string& id, double sentiment,
                               StanceLabel q1 = StanceLabel::kFavor,
                               std::vector<std::string> entities = {},
                               std::string body = "") {
  NewsArticle a;
  a.id = id;
  a.title = id;
  a.body = body.empty() ? id : std::move(body);
  a.sentiment_score = sentiment;
  a.stances[QuestionId("Q1")] = q1;
  a.entity_ids = std::move(entities);
  return a;
}

inline CorpusManifest Q1Manifest() {
  CorpusManifest m;
  m.questions = {QuestionId("Q1")};
  m.question_texts[QuestionId("Q1")] = "Q1?";
  return m;
}

inline Corpus MakeCorpus(std::vector<NewsArticle> articles) {
  return Corpus(Q1Manifest(), std::move(articles));
}

// Unique temporary directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("biasaudit_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace biasaudit::testing

#endif  // BIASAUDIT_TESTS_TEST_SUPPORT_H_

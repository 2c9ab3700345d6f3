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


#include "biasaudit/bias/bias.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/parallel.h"
#include "fmt/format.h"
#include "json.hpp"

namespace biasaudit {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kStancePrefix = "stance:";

template <typename T, typename Fn>
MaybeStat<T> Attempt(Fn&& fn) {
  MaybeStat<T> out;
  try {
    out.value = fn();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroVariance &&
        e.code() != ErrorCode::kTooFewSamples) {
      throw;
    }
    out.note = std::string(ErrorCodeName(e.code()));
  }
  return out;
}

Json TTestToJson(const MaybeStat<TTestResult>& s) {
  Json j;
  if (s.value) {
    j["t"] = s.value->t;
    j["df"] = s.value->df;
    j["p"] = s.value->p;
    j["n"] = s.value->n;
    j["zero_variance"] = s.value->zero_variance;
  } else {
    j["note"] = s.note;
  }
  return j;
}

MaybeStat<TTestResult> TTestFromJson(const Json& j) {
  MaybeStat<TTestResult> s;
  if (j.contains("note")) {
    s.note = j.at("note").get<std::string>();
    return s;
  }
  TTestResult r;
  r.t = j.at("t").get<double>();
  r.df = j.at("df").get<double>();
  r.p = j.at("p").get<double>();
  r.n = j.at("n").get<std::size_t>();
  r.zero_variance = j.at("zero_variance").get<bool>();
  s.value = r;
  return s;
}

BiasCase ParseBiasCase(std::string_view name) {
  for (std::size_t i = 0; i < kNumBiasCases; ++i) {
    const auto c = static_cast<BiasCase>(i);
    if (BiasCaseName(c) == name) return c;
  }
  throw Error(ErrorCode::kMalformedRecord, "unknown bias case " + std::string(name));
}

std::string FormatP(const MaybeStat<TTestResult>& s) {
  if (!s.value) return "n/a";
  return fmt::format("{:.4f}{}", s.value->p, SignificanceStars(s.value->p));
}

}  // namespace

std::string BiasKind::name() const {
  if (type == Type::kSentiment) return "sentiment";
  return std::string(kStancePrefix) + question.value();
}

BiasKind ParseBiasKind(std::string_view text) {
  if (text == "sentiment") return BiasKind::Sentiment();
  if (text.starts_with(kStancePrefix) && text.size() > kStancePrefix.size()) {
    return BiasKind::Stance(
        QuestionId(std::string(text.substr(kStancePrefix.size()))));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "bias kind must be 'sentiment' or 'stance:<question>', got '" +
                  std::string(text) + "'");
}

double ArticleBias(const NewsArticle& article, const BiasKind& kind) {
  if (kind.type == BiasKind::Type::kSentiment) return article.sentiment_score;
  return StanceScore(article.stance(kind.question));
}

double UserBias(const UserHistory& history, const Corpus& corpus,
                const BiasKind& kind) {
  if (history.article_ids.empty()) {
    throw Error(ErrorCode::kEmptyHistory, "user " + history.user_id);
  }
  double sum = 0.0;
  for (const auto& id : history.article_ids) {
    sum += ArticleBias(corpus.At(id), kind);
  }
  return sum / static_cast<double>(history.article_ids.size());
}

double RecommenderBiasPerUser(std::span<const Recommendation> recs,
                              const Corpus& corpus, const BiasKind& kind) {
  if (recs.empty()) {
    throw Error(ErrorCode::kEmptyRecommendations, "no recommendations to score");
  }
  double sum = 0.0;
  for (const auto& r : recs) sum += ArticleBias(corpus.At(r.article_id), kind);
  return sum / static_cast<double>(recs.size());
}

double AverageRecommenderBias(std::span<const double> per_user) {
  return Mean(per_user);
}

std::string_view BiasCaseName(BiasCase c) {
  switch (c) {
    case BiasCase::kC1: return "C1";
    case BiasCase::kC2: return "C2";
    case BiasCase::kC3: return "C3";
    case BiasCase::kC4: return "C4";
    case BiasCase::kC5: return "C5";
  }
  return "?";
}

BiasCase ClassifyBiasCase(double user_bias, double rec_bias, double epsilon) {
  const bool user_neutral = std::abs(user_bias) <= epsilon;
  const bool rec_neutral = std::abs(rec_bias) <= epsilon;
  if (user_neutral && rec_neutral) return BiasCase::kC5;
  if (rec_neutral) return BiasCase::kC3;
  if (user_neutral) return BiasCase::kC4;
  return (user_bias > 0.0) == (rec_bias > 0.0) ? BiasCase::kC1 : BiasCase::kC2;
}

double CorpusBias(const Corpus& corpus, const BiasKind& kind) {
  if (kind.type == BiasKind::Type::kSentiment) {
    return CorpusSentimentStats(corpus).mean;
  }
  return CorpusStanceAverage(corpus, kind.question);
}

std::string_view SignificanceStars(double p) {
  if (p < 0.01) return "*";
  if (p < 0.05) return "**";
  return "";
}

std::vector<BiasKind> AuditKinds(const Corpus& corpus,
                                 const AuditConfig& config) {
  std::vector<BiasKind> kinds;
  if (config.include_sentiment) kinds.push_back(BiasKind::Sentiment());
  const auto& questions =
      config.questions.empty() ? corpus.questions() : config.questions;
  const std::set<QuestionId> known(corpus.questions().begin(),
                                   corpus.questions().end());
  for (const auto& q : questions) {
    if (!known.contains(q)) throw Error(ErrorCode::kUnknownQuestion, q.value());
    kinds.push_back(BiasKind::Stance(q));
  }
  if (kinds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to audit");
  }
  return kinds;
}

BiasReport Audit(const Recommender& recommender,
                 std::span<const UserHistory> users, const Corpus& corpus,
                 const AuditConfig& config) {
  if (users.empty()) throw Error(ErrorCode::kEmptyInput, "no users to audit");
  if (config.epsilon < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be nonnegative");
  }
  BiasReport report;
  report.model_name = recommender.name();
  report.test_set = config.test_set;
  report.k = config.k;
  report.epsilon = config.epsilon;
  report.kinds = AuditKinds(corpus, config);
  const std::size_t n_kinds = report.kinds.size();

  std::vector<const UserHistory*> ordered;
  for (const auto& u : users) ordered.push_back(&u);
  std::sort(ordered.begin(), ordered.end(),
            [](const UserHistory* a, const UserHistory* b) {
              return a->user_id < b->user_id;
            });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->user_id == ordered[i - 1]->user_id) {
      throw Error(ErrorCode::kDuplicateId, "user " + ordered[i]->user_id);
    }
  }

  report.users.resize(ordered.size());
  ParallelFor(ordered.size(), config.jobs, [&](std::size_t i) {
    const UserHistory& history = *ordered[i];
    if (history.article_ids.empty()) {
      throw Error(ErrorCode::kEmptyHistory, "user " + history.user_id);
    }
    const auto recs = RecommendTopK(recommender, history, corpus, config.k);
    UserAudit& out = report.users[i];
    out.user_id = history.user_id;
    out.history_size = history.article_ids.size();
    for (const auto& r : recs) out.recommended.push_back(r.article_id);
    for (const BiasKind& kind : report.kinds) {
      const double ub = UserBias(history, corpus, kind);
      const double rb = RecommenderBiasPerUser(recs, corpus, kind);
      out.user_bias.push_back(ub);
      out.rec_bias.push_back(rb);
      out.cases.push_back(ClassifyBiasCase(ub, rb, config.epsilon));
    }
  });

  for (std::size_t k = 0; k < n_kinds; ++k) {
    KindSummary s;
    s.kind = report.kinds[k];
    s.corpus_bias = CorpusBias(corpus, s.kind);
    std::vector<double> ub, rb;
    for (const UserAudit& u : report.users) {
      ub.push_back(u.user_bias[k]);
      rb.push_back(u.rec_bias[k]);
      ++s.case_counts[static_cast<std::size_t>(u.cases[k])];
    }
    s.average_user_bias = Mean(ub);
    s.average_rec_bias = AverageRecommenderBias(rb);
    s.pearson = Attempt<PearsonResult>([&] { return Pearson(ub, rb); });
    s.user_vs_corpus =
        Attempt<TTestResult>([&] { return OneSampleTTest(ub, s.corpus_bias); });
    s.rec_vs_user = Attempt<TTestResult>([&] { return PairedTTest(rb, ub); });
    s.rec_vs_user_welch =
        Attempt<TTestResult>([&] { return WelchTTest(rb, ub); });
    s.rec_vs_corpus =
        Attempt<TTestResult>([&] { return OneSampleTTest(rb, s.corpus_bias); });
    report.summaries.push_back(std::move(s));
  }
  return report;
}

std::vector<UserHistory> AuditUsers(const InteractionLog& log,
                                    std::optional<TestSet> set) {
  std::set<std::string> selected;
  for (const Interaction& r : log.records) {
    if (r.origin != Origin::kChosen || r.label != 1) continue;
    if (!set || InTestSet(r, *set)) selected.insert(r.user_id);
  }
  auto histories = BuildHistories(log, [&](const Interaction& r) {
    return r.origin == Origin::kChosen && selected.contains(r.user_id);
  });
  std::vector<UserHistory> out;
  for (auto& [id, h] : histories) out.push_back(std::move(h));
  return out;
}

std::string ReportToJson(const BiasReport& report) {
  Json j;
  j["model"] = report.model_name;
  j["test_set"] = report.test_set;
  j["k"] = report.k;
  j["epsilon"] = report.epsilon;
  j["n_users"] = report.users.size();
  Json kinds = Json::array();
  for (const auto& kind : report.kinds) kinds.push_back(kind.name());
  j["kinds"] = kinds;

  Json summaries = Json::array();
  for (const KindSummary& s : report.summaries) {
    Json js;
    js["kind"] = s.kind.name();
    js["corpus_bias"] = s.corpus_bias;
    js["average_user_bias"] = s.average_user_bias;
    js["average_rec_bias"] = s.average_rec_bias;
    Json cases;
    for (std::size_t c = 0; c < kNumBiasCases; ++c) {
      cases[std::string(BiasCaseName(static_cast<BiasCase>(c)))] =
          s.case_counts[c];
    }
    js["case_counts"] = cases;
    Json pearson;
    if (s.pearson.value) {
      pearson["r"] = s.pearson.value->r;
      pearson["p"] = s.pearson.value->p;
      pearson["n"] = s.pearson.value->n;
    } else {
      pearson["note"] = s.pearson.note;
    }
    js["pearson"] = pearson;
    js["t_tests"] = {
        {"user_vs_corpus", TTestToJson(s.user_vs_corpus)},
        {"rec_vs_user_paired", TTestToJson(s.rec_vs_user)},
        {"rec_vs_user_welch", TTestToJson(s.rec_vs_user_welch)},
        {"rec_vs_corpus", TTestToJson(s.rec_vs_corpus)},
    };
    summaries.push_back(std::move(js));
  }
  j["summary"] = summaries;

  Json users = Json::array();
  for (const UserAudit& u : report.users) {
    Json ju;
    ju["user_id"] = u.user_id;
    ju["history_size"] = u.history_size;
    ju["recommended"] = u.recommended;
    Json ub, rb, cases;
    for (std::size_t k = 0; k < report.kinds.size(); ++k) {
      const std::string name = report.kinds[k].name();
      ub[name] = u.user_bias[k];
      rb[name] = u.rec_bias[k];
      cases[name] = std::string(BiasCaseName(u.cases[k]));
    }
    ju["user_bias"] = ub;
    ju["rec_bias"] = rb;
    ju["cases"] = cases;
    users.push_back(std::move(ju));
  }
  j["users"] = users;
  return j.dump(2) + "\n";
}

BiasReport ReportFromJson(std::string_view json_text) {
  try {
    const Json j = Json::parse(json_text);
    BiasReport report;
    report.model_name = j.at("model").get<std::string>();
    report.test_set = j.at("test_set").get<std::string>();
    report.k = j.at("k").get<std::size_t>();
    report.epsilon = j.at("epsilon").get<double>();
    for (const auto& name : j.at("kinds")) {
      report.kinds.push_back(ParseBiasKind(name.get<std::string>()));
    }
    for (const Json& js : j.at("summary")) {
      KindSummary s;
      s.kind = ParseBiasKind(js.at("kind").get<std::string>());
      s.corpus_bias = js.at("corpus_bias").get<double>();
      s.average_user_bias = js.at("average_user_bias").get<double>();
      s.average_rec_bias = js.at("average_rec_bias").get<double>();
      for (std::size_t c = 0; c < kNumBiasCases; ++c) {
        s.case_counts[c] = js.at("case_counts")
                               .at(std::string(BiasCaseName(static_cast<BiasCase>(c))))
                               .get<std::size_t>();
      }
      const Json& jp = js.at("pearson");
      if (jp.contains("note")) {
        s.pearson.note = jp.at("note").get<std::string>();
      } else {
        s.pearson.value = PearsonResult{jp.at("r").get<double>(),
                                        jp.at("p").get<double>(),
                                        jp.at("n").get<std::size_t>()};
      }
      const Json& jt = js.at("t_tests");
      s.user_vs_corpus = TTestFromJson(jt.at("user_vs_corpus"));
      s.rec_vs_user = TTestFromJson(jt.at("rec_vs_user_paired"));
      s.rec_vs_user_welch = TTestFromJson(jt.at("rec_vs_user_welch"));
      s.rec_vs_corpus = TTestFromJson(jt.at("rec_vs_corpus"));
      report.summaries.push_back(std::move(s));
    }
    for (const Json& ju : j.at("users")) {
      UserAudit u;
      u.user_id = ju.at("user_id").get<std::string>();
      u.history_size = ju.at("history_size").get<std::size_t>();
      u.recommended = ju.at("recommended").get<std::vector<std::string>>();
      for (const auto& kind : report.kinds) {
        const std::string name = kind.name();
        u.user_bias.push_back(ju.at("user_bias").at(name).get<double>());
        u.rec_bias.push_back(ju.at("rec_bias").at(name).get<double>());
        u.cases.push_back(
            ParseBiasCase(ju.at("cases").at(name).get<std::string>()));
      }
      report.users.push_back(std::move(u));
    }
    return report;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report: ") + e.what());
  }
}

std::string ReportToMarkdown(const BiasReport& report) {
  std::ostringstream out;
  out << fmt::format("# Bias audit: {}\n\n", report.model_name);
  out << fmt::format("Test set: {}. Users: {}. k = {}. Balanced tolerance "
                     "epsilon = {}.\n\n",
                     report.test_set, report.users.size(), report.k,
                     report.epsilon);

  out << "## Average bias scores\n\n";
  out << "| Kind | Corpus | Users | p users vs corpus | Recommender | "
         "p rec vs users | p rec vs corpus |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|\n";
  for (const KindSummary& s : report.summaries) {
    out << fmt::format("| {} | {:.3f} | {:.3f} | {} | {:.3f} | {} | {} |\n",
                       s.kind.name(), s.corpus_bias, s.average_user_bias,
                       FormatP(s.user_vs_corpus), s.average_rec_bias,
                       FormatP(s.rec_vs_user), FormatP(s.rec_vs_corpus));
  }
  out << "\nUser-vs-recommender p-values come from a paired t-test; the "
         "unpaired Welch variant is listed below.\n\n";

  out << "## Bias cases\n\n";
  out << "| Kind | C1 | C2 | C3 | C4 | C5 |\n";
  out << "|---|---:|---:|---:|---:|---:|\n";
  for (const KindSummary& s : report.summaries) {
    out << fmt::format("| {} | {} | {} | {} | {} | {} |\n", s.kind.name(),
                       s.case_counts[0], s.case_counts[1], s.case_counts[2],
                       s.case_counts[3], s.case_counts[4]);
  }
  out << "\nC1 same direction, C2 opposite directions, C3 recommender "
         "balanced, C4 user balanced, C5 no bias.\n\n";

  out << "## Recommender-user bias correlation\n\n";
  out << "| Kind | Pearson r | p | n |\n";
  out << "|---|---:|---:|---:|\n";
  for (const KindSummary& s : report.summaries) {
    if (s.pearson.value) {
      const auto& p = *s.pearson.value;
      out << fmt::format("| {} | {:.3f}{} | {:.4f} | {} |\n", s.kind.name(),
                         p.r, SignificanceStars(p.p), p.p, p.n);
    } else {
      out << fmt::format("| {} | n/a | n/a | {} |\n", s.kind.name(),
                         report.users.size());
    }
  }

  out << "\n## Welch t-test, recommender vs users\n\n";
  out << "| Kind | t | df | p |\n";
  out << "|---|---:|---:|---:|\n";
  for (const KindSummary& s : report.summaries) {
    if (s.rec_vs_user_welch.value) {
      const auto& t = *s.rec_vs_user_welch.value;
      out << fmt::format("| {} | {:.3f} | {:.1f} | {} |\n", s.kind.name(), t.t,
                         t.df, FormatP(s.rec_vs_user_welch));
    } else {
      out << fmt::format("| {} | n/a | n/a | n/a |\n", s.kind.name());
    }
  }
  out << "\n`*` p < 0.01, `**` p < 0.05.\n";
  return out.str();
}

}  // namespace biasaudit

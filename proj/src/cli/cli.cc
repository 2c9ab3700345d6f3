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


#include "biasaudit/cli/cli.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "biasaudit/bias/bias.h"
#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"
#include "biasaudit/corpus/corpus.h"
#include "biasaudit/corpus/interactions.h"
#include "biasaudit/corpus/knowledge_graph.h"
#include "biasaudit/eval/evaluate.h"
#include "biasaudit/eval/split.h"
#include "biasaudit/recommenders/embedding.h"
#include "biasaudit/recommenders/recommender.h"
#include "biasaudit/recommenders/tfidf.h"
#include "biasaudit/ripplenet/checkpoint.h"
#include "biasaudit/ripplenet/ripple_recommender.h"
#include "biasaudit/ripplenet/trainer.h"
#include "biasaudit/sim/simulator.h"
#include "biasaudit/sim/synthetic.h"
#include "fmt/format.h"
#include "json.hpp"
#include "spdlog/sinks/ostream_sink.h"
#include "spdlog/spdlog.h"

namespace biasaudit {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kModelNames = "tfidf, word2vec, docembed, ripplenet, random";

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string config;
  int jobs = 1;
  std::string log_level = "info";
};

struct DataOptions {
  std::string corpus;
  std::string manifest;
  std::string kg;
  std::string interactions;
  std::string word_vectors;
  std::string sentence_vectors;
  std::int64_t max_word_count = 0;  // 0: keep every article
  std::size_t word_dim = kWordEmbeddingDim;
  std::size_t sentence_dim = kSentenceEmbeddingDim;
};

struct RippleOptions {
  ripple::RippleConfig config;
  std::string optimizer = "sgd";
  std::string checkpoint;
};

struct Options {
  CommonOptions common;
  DataOptions data;
  RippleOptions ripple;
  double train_fraction = 0.8;
  std::string aggregation = "mean";

  // simulate
  std::size_t users = 100;
  int rounds = 4;
  int preview_size = 6;
  double temperature = 0.5;
  std::string bias_kind = "stance:Q1";
  double beta_low = -1.0;
  double beta_high = 1.0;
  std::string weights = "tfidf=786,word2vec=211,docembed=209,random=211";
  std::size_t articles = 240;

  // evaluate
  std::string models = "tfidf";
  std::string tests = "complete,random";
  double threshold = 0.5;

  // audit
  std::string model = "tfidf";
  std::size_t k = kDefaultTopK;
  double epsilon = kDefaultEpsilon;
  std::string questions;
  bool no_sentiment = false;
  std::string test_set = "complete";

  // report
  std::string results_path;
  std::string report_path;
};

// State shared by one invocation.
struct Run {
  std::string command;
  const CLI::App* app = nullptr;
  Options* options = nullptr;
  std::shared_ptr<spdlog::logger> log;
  std::vector<std::string> argv;
  std::vector<fs::path> outputs;
  std::string started_at;

  fs::path Out(const std::string& name) const {
    return fs::path(options->common.out) / name;
  }
  void Write(const std::string& name, std::string_view content) {
    WriteFile(Out(name), content);
    outputs.push_back(Out(name));
    log->info("wrote {}", Out(name).string());
  }
  int jobs() const {
    if (options->common.jobs > 0) return options->common.jobs;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
};

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

std::vector<std::string> SplitList(std::string_view csv) {
  std::vector<std::string> out;
  for (std::string_view item : SplitFields(csv, ',')) {
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

// --- Inputs -------------------------------------------------------------

struct Inputs {
  std::shared_ptr<const Corpus> corpus;
  std::shared_ptr<const KnowledgeGraph> kg;
  std::optional<InteractionLog> log;
};

std::shared_ptr<const Corpus> LoadCorpusInput(const DataOptions& d) {
  if (d.corpus.empty()) Invalid("--corpus is required");
  CorpusLoadOptions options;
  if (d.max_word_count > 0) options.max_word_count = d.max_word_count;
  const CorpusManifest manifest =
      d.manifest.empty() ? CorpusManifest::Default() : LoadManifest(d.manifest);
  auto in = OpenInput(d.corpus);
  return std::make_shared<const Corpus>(ParseCorpus(in, manifest, options));
}

std::shared_ptr<const KnowledgeGraph> LoadKgInput(const DataOptions& d) {
  if (d.kg.empty()) Invalid("--kg is required for ripplenet");
  return std::make_shared<const KnowledgeGraph>(LoadKnowledgeGraph(d.kg));
}

InteractionLog LoadSplitLog(Run& run, const Corpus& corpus) {
  const DataOptions& d = run.options->data;
  if (d.interactions.empty()) Invalid("--interactions is required");
  const InteractionLog raw = LoadInteractions(d.interactions, &corpus);
  SplitSummary summary;
  InteractionLog log = EnsureSplit(
      raw, {run.options->train_fraction, run.options->common.seed}, &summary);
  run.log->info("split: {} train, {} complete test, {} random test",
                summary.train, summary.complete_test, summary.random_test);
  for (const auto& w : summary.warnings) run.log->warn("{}", w);
  return log;
}

ripple::RippleConfig ResolveRippleConfig(const Options& o) {
  ripple::RippleConfig c = o.ripple.config;
  c.rng_seed = o.common.seed;
  if (o.ripple.optimizer == "sgd") {
    c.optimizer = ripple::Optimizer::kSgd;
  } else if (o.ripple.optimizer == "adam") {
    c.optimizer = ripple::Optimizer::kAdam;
  } else {
    Invalid("--optimizer must be sgd or adam");
  }
  c.Validate();
  return c;
}

HistoryAggregation ResolveAggregation(const std::string& name) {
  if (name == "mean") return HistoryAggregation::kMeanProfile;
  if (name == "max") return HistoryAggregation::kMaxSimilarity;
  Invalid("--aggregation must be mean or max");
}

ripple::TrainResult TrainRipple(Run& run, const KnowledgeGraph& kg,
                                const InteractionLog& log, const Corpus& corpus) {
  const auto config = ResolveRippleConfig(*run.options);
  ripple::TrainingData data =
      ripple::PrepareTrainingData(kg, log, corpus, config);
  if (data.skipped_entities > 0) {
    run.log->warn("{} entity mentions are absent from the knowledge graph",
                  data.skipped_entities);
  }
  if (data.cold_records > 0) {
    run.log->warn("{} training records belong to users without clicks",
                  data.cold_records);
  }
  run.log->info("training ripplenet on {} examples for {} epochs",
                data.examples.size(), config.epochs);
  auto result = ripple::Train(kg, data, config);
  for (const auto& e : result.trace) {
    run.log->debug("epoch {} bce {:.6f} total {:.6f}", e.epoch, e.bce, e.total);
  }
  return result;
}

std::unique_ptr<Recommender> BuildRecommender(Run& run, const std::string& name,
                                              const Inputs& inputs) {
  const Options& o = *run.options;
  const auto aggregation = ResolveAggregation(o.aggregation);
  if (name == "tfidf") {
    auto table = std::make_shared<const VectorTable>(TfidfVectorize(*inputs.corpus));
    return std::make_unique<TextRecommender>("tfidf", table, aggregation);
  }
  if (name == "word2vec") {
    if (o.data.word_vectors.empty()) Invalid("--word-vectors is required for word2vec");
    const auto words = LoadWordVectors(o.data.word_vectors);
    auto table = std::make_shared<const VectorTable>(
        EmbedAverageWords(*inputs.corpus, words, o.data.word_dim));
    return std::make_unique<TextRecommender>("word2vec", table, aggregation);
  }
  if (name == "docembed") {
    if (o.data.sentence_vectors.empty()) {
      Invalid("--sentence-vectors is required for docembed");
    }
    const auto sentences = LoadSentenceVectors(o.data.sentence_vectors);
    auto table = std::make_shared<const VectorTable>(
        EmbedAverageSentences(*inputs.corpus, sentences, o.data.sentence_dim));
    return std::make_unique<TextRecommender>("docembed", table, aggregation);
  }
  if (name == "random") return std::make_unique<RandomRecommender>(o.common.seed);
  if (name == "ripplenet") {
    if (!inputs.kg) Invalid("--kg is required for ripplenet");
    std::shared_ptr<const ripple::RippleModel> model;
    if (!o.ripple.checkpoint.empty()) {
      model = std::make_shared<const ripple::RippleModel>(
          ripple::LoadCheckpoint(o.ripple.checkpoint));
      run.log->info("loaded checkpoint {}", o.ripple.checkpoint);
    } else {
      if (!inputs.log) Invalid("ripplenet needs --checkpoint or --interactions");
      model = std::make_shared<const ripple::RippleModel>(
          TrainRipple(run, *inputs.kg, *inputs.log, *inputs.corpus).model);
    }
    return std::make_unique<ripple::RippleRecommender>(model, inputs.corpus,
                                                       inputs.kg);
  }
  Invalid(fmt::format("unknown model '{}' (expected one of: {})", name, kModelNames));
}

// --- Manifest -----------------------------------------------------------

Json ResolvedConfig(const CLI::App& app) {
  Json config;
  for (const CLI::Option* opt : app.get_options()) {
    const std::string& name = opt->get_single_name();
    if (name.empty() || name == "help" || opt->get_lnames().empty()) continue;
    if (opt->count() > 0) {
      const auto& results = opt->reduced_results();
      if (opt->get_type_size() == 0) {
        config[name] = opt->as<bool>();
      } else {
        config[name] = results.empty() ? "" : results.back();
      }
    } else if (opt->get_type_size() == 0) {
      config[name] = false;
    } else {
      config[name] = opt->get_default_str();
    }
  }
  return config;
}

void WriteManifest(Run& run) {
  Json j;
  j["tool"] = "biasaudit";
  j["version"] = kToolVersion;
  j["command"] = run.command;
  j["argv"] = run.argv;
  j["config_file"] = run.options->common.config.empty()
                         ? Json(nullptr)
                         : Json(run.options->common.config);
  j["config"] = ResolvedConfig(*run.app);
  Json outputs = Json::array();
  for (const auto& p : run.outputs) outputs.push_back(p.string());
  j["outputs"] = outputs;
  j["timestamps"] = {{"started_at", run.started_at}, {"finished_at", UtcNow()}};
  WriteFile(run.Out("manifest.json"), j.dump(2) + "\n");
}

// --- Commands -----------------------------------------------------------

void CmdIngest(Run& run) {
  const Options& o = *run.options;
  Inputs inputs;
  inputs.corpus = LoadCorpusInput(o.data);
  const Corpus& corpus = *inputs.corpus;
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus has no articles");
  run.log->info("loaded {} articles", corpus.size());

  Json summary;
  summary["articles"] = corpus.size();
  const auto stats = CorpusSentimentStats(corpus);
  summary["sentiment"] = {{"mean", stats.mean}, {"median", stats.median}};
  Json stances;
  std::ostringstream md;
  md << "# Corpus summary\n\n";
  md << fmt::format("Articles: {}. Sentiment mean {:.3f}, median {:.3f}.\n\n",
                    corpus.size(), stats.mean, stats.median);
  md << "| Question | Favor | Against | Average |\n|---|---:|---:|---:|\n";
  for (const auto& q : corpus.questions()) {
    const auto counts = CountStances(corpus, q);
    const double avg = StanceAverage(counts);
    stances[q.value()] = {
        {"favor", counts.favor}, {"against", counts.against}, {"average", avg}};
    md << fmt::format("| {} | {} | {} | {:.3f} |\n", q.value(), counts.favor,
                      counts.against, avg);
  }
  summary["stances"] = stances;

  if (!o.data.kg.empty()) {
    const auto kg = LoadKgInput(o.data);
    summary["knowledge_graph"] = {{"entities", kg->num_entities()},
                                  {"relations", kg->num_relations()},
                                  {"triples", kg->triples().size()}};
    std::size_t unlinked = 0;
    for (const auto& a : corpus.articles()) {
      for (const auto& e : a.entity_ids) {
        if (!kg->entities().Find(e)) ++unlinked;
      }
    }
    summary["knowledge_graph"]["unlinked_entity_mentions"] = unlinked;
    if (unlinked > 0) {
      run.log->warn("{} entity mentions are absent from the knowledge graph",
                    unlinked);
    }
  }
  if (!o.data.interactions.empty()) {
    const auto log = LoadInteractions(o.data.interactions, &corpus);
    const auto split = SummarizeSplit(log);
    std::set<std::string> users;
    std::size_t positives = 0;
    for (const auto& r : log.records) {
      users.insert(r.user_id);
      positives += r.label == 1 ? 1 : 0;
    }
    summary["interactions"] = {{"records", log.records.size()},
                               {"users", users.size()},
                               {"positives", positives},
                               {"train", split.train},
                               {"complete_test", split.complete_test},
                               {"random_test", split.random_test}};
  }
  if (!o.data.word_vectors.empty()) {
    const auto words = LoadWordVectors(o.data.word_vectors);
    if (o.data.word_dim != 0 && words.dim() != o.data.word_dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("word vectors have dim {}, expected {}",
                              words.dim(), o.data.word_dim));
    }
    summary["word_vectors"] = {{"tokens", words.size()}, {"dim", words.dim()}};
  }
  if (!o.data.sentence_vectors.empty()) {
    const auto sentences = LoadSentenceVectors(o.data.sentence_vectors);
    // Validates coverage and dimension.
    EmbedAverageSentences(corpus, sentences, o.data.sentence_dim);
    summary["sentence_vectors"] = {{"articles", sentences.by_article.size()},
                                   {"dim", sentences.dim}};
  }

  run.Write("corpus_summary.json", summary.dump(2) + "\n");
  run.Write("corpus_summary.md", md.str());
  std::ostringstream triples;
  WriteStanceTriples(corpus, triples);
  run.Write("stance_triples.tsv", triples.str());
}

std::vector<std::pair<std::string, double>> ParseWeights(std::string_view text) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : SplitList(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) Invalid("--weights entries must be name=weight");
    const std::string name = item.substr(0, eq);
    double w = 0.0;
    try {
      std::size_t used = 0;
      w = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      Invalid("bad weight in '" + item + "'");
    }
    out.emplace_back(name, w);
  }
  if (out.empty()) Invalid("--weights is empty");
  return out;
}

void CmdSimulate(Run& run) {
  const Options& o = *run.options;
  SimConfig config;
  config.n_users = o.users;
  config.latent_kind = ParseBiasKind(o.bias_kind);
  config.beta_low = o.beta_low;
  config.beta_high = o.beta_high;
  config.temperature = o.temperature;
  config.rounds = o.rounds;
  config.preview_size = o.preview_size;
  config.assignment = ParseWeights(o.weights);
  config.rng_seed = o.common.seed;
  config.jobs = run.jobs();
  config.Validate();

  std::shared_ptr<const Corpus> corpus;
  std::optional<WordEmbeddings> words;
  std::optional<SentenceEmbeddings> sentences;
  if (o.data.corpus.empty()) {
    SyntheticCorpusConfig sc;
    sc.n_articles = o.articles;
    if (!o.questions.empty()) sc.questions = ParseQuestionList(o.questions);
    sc.rng_seed = o.common.seed;
    SyntheticData data = GenerateSyntheticData(sc);
    for (const auto& p : WriteSyntheticData(data, o.common.out)) {
      run.outputs.push_back(p);
      run.log->info("wrote {}", p.string());
    }
    corpus = std::make_shared<const Corpus>(std::move(data.corpus));
    words = std::move(data.words);
    sentences = std::move(data.sentences);
  } else {
    corpus = LoadCorpusInput(o.data);
    if (!o.data.word_vectors.empty()) words = LoadWordVectors(o.data.word_vectors);
    if (!o.data.sentence_vectors.empty()) {
      sentences = LoadSentenceVectors(o.data.sentence_vectors);
    }
  }
  run.log->info("simulating {} users over {} articles", config.n_users,
                corpus->size());

  const auto aggregation = ResolveAggregation(o.aggregation);
  std::vector<std::unique_ptr<Recommender>> owned;
  std::map<std::string, const Recommender*> recommenders;
  for (const auto& [name, w] : config.assignment) {
    if (w <= 0.0 || name == kRandomAssignment) continue;
    std::shared_ptr<const VectorTable> table;
    if (name == "tfidf") {
      table = std::make_shared<const VectorTable>(TfidfVectorize(*corpus));
    } else if (name == "word2vec") {
      if (!words) Invalid("--word-vectors is required to simulate word2vec users");
      table = std::make_shared<const VectorTable>(
          EmbedAverageWords(*corpus, *words, o.data.word_dim));
    } else if (name == "docembed") {
      if (!sentences) {
        Invalid("--sentence-vectors is required to simulate docembed users");
      }
      table = std::make_shared<const VectorTable>(
          EmbedAverageSentences(*corpus, *sentences, o.data.sentence_dim));
    } else {
      Invalid("unknown assignment slot '" + name +
              "' (expected tfidf, word2vec, docembed or random)");
    }
    owned.push_back(std::make_unique<TextRecommender>(name, table, aggregation));
    recommenders[name] = owned.back().get();
  }

  SimulationResult sim = Simulate(*corpus, recommenders, config);
  SplitSummary summary;
  const InteractionLog log = SplitInteractions(
      sim.log, {o.train_fraction, o.common.seed}, &summary);
  for (const auto& w : summary.warnings) run.log->warn("{}", w);
  std::ostringstream tsv;
  WriteInteractions(log, tsv);
  run.Write("interactions.tsv", tsv.str());
  run.Write("users.json", UsersToJson(sim.users, config));
}

void CmdTrain(Run& run) {
  const Options& o = *run.options;
  const auto corpus = LoadCorpusInput(o.data);
  const auto kg = LoadKgInput(o.data);
  const InteractionLog log = LoadSplitLog(run, *corpus);
  const auto result = TrainRipple(run, *kg, log, *corpus);
  std::ostringstream csv;
  ripple::WriteTrainingLog(result.trace, csv);
  run.Write("model.json", ripple::CheckpointToJson(result.model));
  run.Write("training_log.csv", csv.str());
  if (!result.trace.empty()) {
    run.log->info("bce epoch 1 {:.6f}, epoch {} {:.6f}", result.trace.front().bce,
                  result.trace.back().epoch, result.trace.back().bce);
  }
}

void CmdEvaluate(Run& run) {
  const Options& o = *run.options;
  Inputs inputs;
  inputs.corpus = LoadCorpusInput(o.data);
  inputs.log = LoadSplitLog(run, *inputs.corpus);
  if (!o.data.kg.empty()) inputs.kg = LoadKgInput(o.data);

  std::vector<TestSet> sets;
  for (const auto& name : SplitList(o.tests)) {
    const auto set = ParseTestSet(name);
    if (!set) Invalid("--tests entries must be complete or random, got " + name);
    sets.push_back(*set);
  }
  const auto models = SplitList(o.models);
  if (models.empty() || sets.empty()) Invalid("--models and --tests must be nonempty");

  const SplitSummary split = SummarizeSplit(*inputs.log);
  std::vector<EvalResult> results;
  EvalOptions eval_options{o.threshold, run.jobs()};
  for (const auto& name : models) {
    const auto recommender = BuildRecommender(run, name, inputs);
    for (TestSet set : sets) {
      if (set == TestSet::kRandom && split.random_test == 0) {
        run.log->warn("skipping {} on the empty random test set", name);
        continue;
      }
      EvalResult r = Evaluate(*recommender, *inputs.log, *inputs.corpus, set,
                              eval_options);
      if (r.cold_users > 0) {
        run.log->warn("{}: {} cold users ({} records) skipped on {} test set",
                      name, r.cold_users, r.cold_records, TestSetName(set));
      }
      run.log->info("{} {}: acc {:.3f} auc {:.3f} f1 {:.3f} over {} records",
                    name, TestSetName(set), r.acc, r.auc, r.f1, r.n_records);
      results.push_back(std::move(r));
    }
  }
  run.Write("results.json", ResultsToJson(results));
  run.Write("results.md", "# CTR prediction results\n\n" +
                              ResultsToMarkdown(results));
}

void CmdAudit(Run& run) {
  const Options& o = *run.options;
  Inputs inputs;
  inputs.corpus = LoadCorpusInput(o.data);
  inputs.log = LoadSplitLog(run, *inputs.corpus);
  if (!o.data.kg.empty()) inputs.kg = LoadKgInput(o.data);

  std::optional<TestSet> set;
  if (o.test_set != "all") {
    set = ParseTestSet(o.test_set);
    if (!set) Invalid("--test-set must be complete, random or all");
  }
  const auto users = AuditUsers(*inputs.log, set);
  if (users.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "no users with chosen articles in the " + o.test_set + " test set");
  }
  const auto recommender = BuildRecommender(run, o.model, inputs);

  AuditConfig config;
  config.k = o.k;
  config.epsilon = o.epsilon;
  config.include_sentiment = !o.no_sentiment;
  config.questions = ParseQuestionList(o.questions);
  config.jobs = run.jobs();
  config.test_set = o.test_set;
  run.log->info("auditing {} for {} users (k = {}, epsilon = {})",
                recommender->name(), users.size(), config.k, config.epsilon);
  const BiasReport report = Audit(*recommender, users, *inputs.corpus, config);
  for (const auto& s : report.summaries) {
    if (!s.pearson.value) {
      run.log->warn("{}: correlation undefined ({})", s.kind.name(), s.pearson.note);
    }
  }
  run.Write("report.json", ReportToJson(report));
  run.Write("report.md", ReportToMarkdown(report));
}

void CmdReport(Run& run) {
  const Options& o = *run.options;
  if (o.results_path.empty() && o.report_path.empty()) {
    Invalid("report needs --results and/or --report");
  }
  std::string summary;
  if (!o.report_path.empty()) {
    const BiasReport report = ReportFromJson(ReadFile(o.report_path));
    const std::string md = ReportToMarkdown(report);
    run.Write("report.md", md);
    summary += md + "\n";
  }
  if (!o.results_path.empty()) {
    const auto results = ResultsFromJson(ReadFile(o.results_path));
    const std::string md = "# CTR prediction results\n\n" + ResultsToMarkdown(results);
    run.Write("results.md", md);
    summary += md;
  }
  run.Write("summary.md", summary);
}

// --- Parsing ------------------------------------------------------------

void AddCommon(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.common.seed, "Random seed");
  sub->add_option("--out", o.common.out, "Output directory");
  sub->add_option("--config", o.common.config,
                  "JSON file whose keys override flags of the same name");
  sub->add_option("--jobs", o.common.jobs, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--log-level", o.common.log_level,
                  "trace, debug, info, warn, error or off");
}

void AddCorpusInputs(CLI::App* sub, Options& o) {
  sub->add_option("--corpus", o.data.corpus, "corpus.jsonl");
  sub->add_option("--manifest", o.data.manifest, "Corpus manifest JSON");
  sub->add_option("--max-word-count", o.data.max_word_count,
                  "Drop longer articles (0: keep all)");
}

void AddModelInputs(CLI::App* sub, Options& o) {
  sub->add_option("--kg", o.data.kg, "Knowledge graph TSV");
  sub->add_option("--word-vectors", o.data.word_vectors, "Word vectors (.vec)");
  sub->add_option("--sentence-vectors", o.data.sentence_vectors,
                  "Sentence vectors TSV");
  sub->add_option("--word-dim", o.data.word_dim,
                  "Expected word-vector dimension (0: any)");
  sub->add_option("--sentence-dim", o.data.sentence_dim,
                  "Expected sentence-vector dimension (0: any)");
  sub->add_option("--aggregation", o.aggregation,
                  "History aggregation for text models: mean or max");
}

void AddSplit(CLI::App* sub, Options& o) {
  sub->add_option("--interactions", o.data.interactions, "interactions.tsv");
  sub->add_option("--train-fraction", o.train_fraction,
                  "Train share when the log carries no split");
}

void AddRipple(CLI::App* sub, Options& o) {
  auto& c = o.ripple.config;
  sub->add_option("--hops", c.hops, "RippleNet hops");
  sub->add_option("--ripple-size", c.ripple_size, "Triples per hop");
  sub->add_option("--dim", c.dim, "Embedding dimension");
  sub->add_option("--kg-weight", c.kg_weight, "Weight of the KG term");
  sub->add_option("--l2-weight", c.l2_weight, "L2 weight");
  sub->add_option("--lr", c.learning_rate, "Learning rate");
  sub->add_option("--epochs", c.epochs, "Training epochs");
  sub->add_option("--batch-size", c.batch_size, "Mini-batch size");
  sub->add_option("--optimizer", o.ripple.optimizer, "sgd or adam");
}

// Scans for --config and returns `args` with the file's entries appended as
// flags, so they take precedence over the command line.
std::vector<std::string> ApplyConfigFile(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  Json config;
  try {
    config = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    Invalid("config " + path + ": " + e.what());
  }
  if (!config.is_object()) Invalid("config " + path + " must hold a JSON object");
  std::vector<std::string> out = args;
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "--config") continue;
    if (value.is_boolean()) {
      out.push_back(flag + "=" + (value.get<bool>() ? "true" : "false"));
    } else if (value.is_string()) {
      out.push_back(flag + "=" + value.get<std::string>());
    } else if (value.is_number()) {
      out.push_back(flag + "=" + value.dump());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!item.is_string() && !item.is_number()) {
          Invalid("config key '" + key + "' must hold scalars");
        }
        if (!joined.empty()) joined += ",";
        joined += item.is_string() ? item.get<std::string>() : item.dump();
      }
      out.push_back(flag + "=" + joined);
    } else {
      Invalid("config key '" + key + "' has an unsupported value");
    }
  }
  return out;
}

std::shared_ptr<spdlog::logger> MakeLogger(std::ostream& err,
                                           const std::string& level) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("biasaudit", sink);
  logger->set_pattern("%Y-%m-%dT%H:%M:%S.%e %l %v");
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") {
    Invalid("unknown --log-level '" + level + "'");
  }
  logger->set_level(parsed);
  return logger;
}

}  // namespace

int RunCli(const std::vector<std::string>& raw_args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Recommender bias audit toolkit", "biasaudit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", kToolVersion);

  CLI::App* ingest = app.add_subcommand("ingest", "Validate and summarize inputs");
  AddCommon(ingest, o);
  AddCorpusInputs(ingest, o);
  ingest->add_option("--kg", o.data.kg, "Knowledge graph TSV");
  ingest->add_option("--interactions", o.data.interactions, "interactions.tsv");
  ingest->add_option("--word-vectors", o.data.word_vectors, "Word vectors (.vec)");
  ingest->add_option("--sentence-vectors", o.data.sentence_vectors,
                     "Sentence vectors TSV");
  ingest->add_option("--word-dim", o.data.word_dim, "Expected word dimension (0: any)");
  ingest->add_option("--sentence-dim", o.data.sentence_dim,
                     "Expected sentence dimension (0: any)");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Simulate users (and a synthetic corpus)");
  AddCommon(simulate, o);
  AddCorpusInputs(simulate, o);
  simulate->add_option("--word-vectors", o.data.word_vectors, "Word vectors (.vec)");
  simulate->add_option("--sentence-vectors", o.data.sentence_vectors,
                       "Sentence vectors TSV");
  simulate->add_option("--word-dim", o.data.word_dim, "Expected word dimension (0: any)");
  simulate->add_option("--sentence-dim", o.data.sentence_dim,
                       "Expected sentence dimension (0: any)");
  simulate->add_option("--aggregation", o.aggregation, "mean or max");
  simulate->add_option("--articles", o.articles,
                       "Synthetic corpus size when --corpus is absent");
  simulate->add_option("--questions", o.questions, "Synthetic questions, e.g. Q1,Q2");
  simulate->add_option("--users", o.users, "Number of users");
  simulate->add_option("--rounds", o.rounds, "Rounds per user");
  simulate->add_option("--preview-size", o.preview_size, "Articles per preview");
  simulate->add_option("--temperature", o.temperature, "Choice temperature");
  simulate->add_option("--bias-kind", o.bias_kind, "sentiment or stance:<question>");
  simulate->add_option("--beta-low", o.beta_low, "Lower bound of latent bias");
  simulate->add_option("--beta-high", o.beta_high, "Upper bound of latent bias");
  simulate->add_option("--weights", o.weights, "Recommender assignment weights");
  simulate->add_option("--train-fraction", o.train_fraction, "Train share");

  CLI::App* train = app.add_subcommand("train", "Train the RippleNet model");
  AddCommon(train, o);
  AddCorpusInputs(train, o);
  train->add_option("--kg", o.data.kg, "Knowledge graph TSV");
  AddSplit(train, o);
  AddRipple(train, o);

  CLI::App* evaluate = app.add_subcommand("evaluate", "CTR prediction metrics");
  AddCommon(evaluate, o);
  AddCorpusInputs(evaluate, o);
  AddModelInputs(evaluate, o);
  AddSplit(evaluate, o);
  AddRipple(evaluate, o);
  evaluate->add_option("--checkpoint", o.ripple.checkpoint, "RippleNet model.json");
  evaluate->add_option("--models", o.models, std::string("Comma list of: ") + kModelNames);
  evaluate->add_option("--tests", o.tests, "Comma list of: complete, random");
  evaluate->add_option("--threshold", o.threshold, "Decision threshold");

  CLI::App* audit = app.add_subcommand("audit", "Sentiment and stance bias audit");
  AddCommon(audit, o);
  AddCorpusInputs(audit, o);
  AddModelInputs(audit, o);
  AddSplit(audit, o);
  AddRipple(audit, o);
  audit->add_option("--checkpoint", o.ripple.checkpoint, "RippleNet model.json");
  audit->add_option("--model", o.model, std::string("One of: ") + kModelNames);
  audit->add_option("--k", o.k, "Recommendations per user")->check(CLI::PositiveNumber);
  audit->add_option("--epsilon", o.epsilon, "Balanced tolerance")
      ->check(CLI::NonNegativeNumber);
  audit->add_option("--questions", o.questions, "Comma list of questions");
  audit->add_flag("--no-sentiment", o.no_sentiment, "Skip the sentiment kind");
  audit->add_option("--test-set", o.test_set, "complete, random or all");

  CLI::App* report = app.add_subcommand("report", "Re-render saved outputs");
  AddCommon(report, o);
  report->add_option("--results", o.results_path, "results.json");
  report->add_option("--report", o.report_path, "report.json");

  std::vector<std::string> args;
  try {
    args = ApplyConfigFile(raw_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Run run;
  run.options = &o;
  run.argv = raw_args;
  run.started_at = UtcNow();
  for (CLI::App* sub : app.get_subcommands()) {
    run.command = sub->get_name();
    run.app = sub;
  }
  try {
    run.log = MakeLogger(err, o.common.log_level);
    fs::create_directories(o.common.out);
    if (run.command == "ingest") CmdIngest(run);
    if (run.command == "simulate") CmdSimulate(run);
    if (run.command == "train") CmdTrain(run);
    if (run.command == "evaluate") CmdEvaluate(run);
    if (run.command == "audit") CmdAudit(run);
    if (run.command == "report") CmdReport(run);
    WriteManifest(run);
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return IsValidationError(e.code()) ? kExitValidation : kExitRuntime;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace biasaudit

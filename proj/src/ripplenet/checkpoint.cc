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


#include "biasaudit/ripplenet/checkpoint.h"

#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"
#include "json.hpp"

namespace biasaudit::ripple {
namespace {

using Json = nlohmann::ordered_json;

Json ConfigToJson(const RippleConfig& c) {
  Json j;
  j["hops"] = c.hops;
  j["ripple_size"] = c.ripple_size;
  j["dim"] = c.dim;
  j["kg_weight"] = c.kg_weight;
  j["l2_weight"] = c.l2_weight;
  j["learning_rate"] = c.learning_rate;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["rng_seed"] = c.rng_seed;
  j["optimizer"] = c.optimizer == Optimizer::kAdam ? "adam" : "sgd";
  return j;
}

RippleConfig ConfigFromJson(const Json& j) {
  RippleConfig c;
  c.hops = j.at("hops").get<int>();
  c.ripple_size = j.at("ripple_size").get<int>();
  c.dim = j.at("dim").get<int>();
  c.kg_weight = j.at("kg_weight").get<double>();
  c.l2_weight = j.at("l2_weight").get<double>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  const std::string opt = j.value("optimizer", "sgd");
  if (opt != "sgd" && opt != "adam") {
    throw Error(ErrorCode::kMalformedRecord, "unknown optimizer " + opt);
  }
  c.optimizer = opt == "adam" ? Optimizer::kAdam : Optimizer::kSgd;
  return c;
}

}  // namespace

std::string CheckpointToJson(const RippleModel& model) {
  Json j;
  j["format"] = "ripplenet-checkpoint";
  j["format_version"] = kCheckpointFormatVersion;
  j["config"] = ConfigToJson(model.config());
  j["entities"] = model.entities().names();
  j["relations"] = model.relations().names();
  j["entity_embeddings_shape"] = {model.num_entities(), model.dim()};
  j["relation_embeddings_shape"] = {model.num_relations(), model.dim(),
                                    model.dim()};
  j["entity_embeddings"] = std::vector<double>(
      model.entity_embeddings().begin(), model.entity_embeddings().end());
  j["relation_embeddings"] = std::vector<double>(
      model.relation_embeddings().begin(), model.relation_embeddings().end());
  return j.dump() + "\n";
}

RippleModel CheckpointFromJson(std::string_view json_text) {
  try {
    const Json j = Json::parse(json_text);
    if (j.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw Error(ErrorCode::kMalformedRecord, "unsupported checkpoint version");
    }
    return RippleModel::FromParameters(
        ConfigFromJson(j.at("config")),
        j.at("entities").get<std::vector<std::string>>(),
        j.at("relations").get<std::vector<std::string>>(),
        j.at("entity_embeddings").get<std::vector<double>>(),
        j.at("relation_embeddings").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("checkpoint: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedRecord) throw;
    throw Error(ErrorCode::kMalformedRecord,
                std::string("checkpoint: ") + e.what());
  }
}

void SaveCheckpoint(const RippleModel& model,
                    const std::filesystem::path& path) {
  WriteFile(path, CheckpointToJson(model));
}

RippleModel LoadCheckpoint(const std::filesystem::path& path) {
  return CheckpointFromJson(ReadFile(path));
}

}  // namespace biasaudit::ripple

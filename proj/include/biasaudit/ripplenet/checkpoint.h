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


#ifndef BIASAUDIT_RIPPLENET_CHECKPOINT_H_
#define BIASAUDIT_RIPPLENET_CHECKPOINT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "biasaudit/ripplenet/model.h"

namespace biasaudit::ripple {

inline constexpr int kCheckpointFormatVersion = 1;

// JSON checkpoint: format version, config, vocabularies, shapes and
// flattened parameter arrays. Doubles round-trip exactly.
std::string CheckpointToJson(const RippleModel& model);
// Throws MalformedRecord on schema or shape errors.
RippleModel CheckpointFromJson(std::string_view json_text);

void SaveCheckpoint(const RippleModel& model, const std::filesystem::path& path);
RippleModel LoadCheckpoint(const std::filesystem::path& path);

}  // namespace biasaudit::ripple

#endif  // BIASAUDIT_RIPPLENET_CHECKPOINT_H_

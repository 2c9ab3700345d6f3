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


#ifndef BIASAUDIT_COMMON_IO_H_
#define BIASAUDIT_COMMON_IO_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace biasaudit {

// Throw Error(kIo) when the file cannot be opened.
std::ifstream OpenInput(const std::filesystem::path& path);
std::ofstream OpenOutput(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Splits on `sep` keeping empty fields.
std::vector<std::string_view> SplitFields(std::string_view line, char sep);

// Removes a trailing '\r' left by CRLF files.
std::string_view StripCr(std::string_view line);

}  // namespace biasaudit

#endif  // BIASAUDIT_COMMON_IO_H_

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


#ifndef BIASAUDIT_CLI_CLI_H_
#define BIASAUDIT_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace biasaudit {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes of RunCli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // bad flags, config or input files
inline constexpr int kExitRuntime = 2;     // degenerate data, divergence, I/O

// Entry point of the `biasaudit` tool. `args[0]` is the program name.
// Usage and help go to `out`; logs and error messages to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace biasaudit

#endif  // BIASAUDIT_CLI_CLI_H_

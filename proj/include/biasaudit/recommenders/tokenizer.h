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


#ifndef BIASAUDIT_RECOMMENDERS_TOKENIZER_H_
#define BIASAUDIT_RECOMMENDERS_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace biasaudit {

// Lowercases UTF-8 text, splits on non-alphanumeric code points and keeps
// tokens of at least two code points. Letters outside ASCII are recognized
// for Latin, Greek and Cyrillic scripts (umlauts and sharp s included);
// code points in punctuation and symbol blocks act as separators. Invalid
// UTF-8 bytes are separators. No stemming.
std::vector<std::string> Tokenize(std::string_view text);

// Word n-grams of consecutive tokens for n in [min_n, max_n], joined with a
// single space, unigrams first.
std::vector<std::string> NGrams(const std::vector<std::string>& tokens,
                                int min_n, int max_n);

// Lowercasing applied by Tokenize, exposed for vocabulary lookups.
std::string LowercaseUtf8(std::string_view text);

}  // namespace biasaudit

#endif  // BIASAUDIT_RECOMMENDERS_TOKENIZER_H_

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


#ifndef BIASAUDIT_COMMON_RANDOM_H_
#define BIASAUDIT_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace biasaudit {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
inline std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a; stable across platforms, unlike std::hash.
inline std::uint64_t StableHash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Independent stream for (seed, key), e.g. one per user.
inline Rng DeriveRng(std::uint64_t seed, std::uint64_t key) {
  return Rng(MixSeed(MixSeed(seed) ^ key));
}

inline Rng DeriveRng(std::uint64_t seed, std::string_view key) {
  return DeriveRng(seed, StableHash(key));
}

}  // namespace biasaudit

#endif  // BIASAUDIT_COMMON_RANDOM_H_

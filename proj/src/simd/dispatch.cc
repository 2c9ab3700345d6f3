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


#include <atomic>
#include <cstdlib>
#include <string_view>

#include "biasaudit/simd/kernels.h"

namespace biasaudit::simd {
namespace {

const KernelTable* LookupIsa(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return &ScalarKernels();
    case Isa::kAvx2: return Avx2Kernels();
    case Isa::kNeon: return NeonKernels();
  }
  return nullptr;
}

const KernelTable* SelectInitial() {
  if (const char* env = std::getenv("BIASAUDIT_SIMD")) {
    const std::string_view want(env);
    for (const KernelTable* table : AvailableKernels()) {
      if (table->name == want) return table;
    }
  }
  if (const KernelTable* t = Avx2Kernels()) return t;
  if (const KernelTable* t = NeonKernels()) return t;
  return &ScalarKernels();
}

std::atomic<const KernelTable*>& Slot() {
  static std::atomic<const KernelTable*> slot{SelectInitial()};
  return slot;
}

}  // namespace

std::vector<const KernelTable*> AvailableKernels() {
  std::vector<const KernelTable*> out{&ScalarKernels()};
  if (const KernelTable* t = Avx2Kernels()) out.push_back(t);
  if (const KernelTable* t = NeonKernels()) out.push_back(t);
  return out;
}

const KernelTable& Active() { return *Slot().load(std::memory_order_relaxed); }

bool SetActiveIsa(Isa isa) {
  const KernelTable* table = LookupIsa(isa);
  if (table == nullptr) return false;
  Slot().store(table, std::memory_order_relaxed);
  return true;
}

}  // namespace biasaudit::simd

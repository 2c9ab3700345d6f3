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


#include "biasaudit/simd/kernels.h"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace biasaudit::simd {

#if defined(__aarch64__)
namespace {

// AdvSIMD is mandatory on AArch64, so no runtime probe is needed.

double DotNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double SquaredNormNeon(const double* a, std::size_t n) { return DotNeon(a, a, n); }

void AxpyNeon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void ScaleNeon(double alpha, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

// No gather on NEON; two independent accumulators still help latency.
double SparseDotNeon(const std::uint32_t* indices, const double* values,
                     std::size_t nnz, const double* dense) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= nnz; k += 2) {
    const double gathered[2] = {dense[indices[k]], dense[indices[k + 1]]};
    acc = vfmaq_f64(acc, vld1q_f64(values + k), vld1q_f64(gathered));
  }
  double sum = vaddvq_f64(acc);
  for (; k < nnz; ++k) sum += values[k] * dense[indices[k]];
  return sum;
}

}  // namespace

const KernelTable* NeonKernels() {
  static const KernelTable table{Isa::kNeon,     "neon",    DotNeon,
                                 SquaredNormNeon, AxpyNeon, ScaleNeon,
                                 SparseDotNeon};
  return &table;
}

#else

const KernelTable* NeonKernels() { return nullptr; }

#endif

}  // namespace biasaudit::simd

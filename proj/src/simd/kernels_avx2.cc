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

#if defined(__x86_64__) || defined(_M_X64)
#define BIASAUDIT_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace biasaudit::simd {

#if defined(BIASAUDIT_HAVE_AVX2_KERNELS)
namespace {

#define BIASAUDIT_AVX2 __attribute__((target("avx2,fma")))

BIASAUDIT_AVX2 inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

BIASAUDIT_AVX2 double DotAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8),
                           _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12),
                           _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = HorizontalSum(
      _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

BIASAUDIT_AVX2 double SquaredNormAvx2(const double* a, std::size_t n) {
  return DotAvx2(a, a, n);
}

BIASAUDIT_AVX2 void AxpyAvx2(double alpha, const double* x, double* y,
                             std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

BIASAUDIT_AVX2 void ScaleAvx2(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

// Vocabulary indices fit in int32 (enforced by the TF-IDF vectorizer).
BIASAUDIT_AVX2 double SparseDotAvx2(const std::uint32_t* indices,
                                    const double* values, std::size_t nnz,
                                    const double* dense) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= nnz; k += 8) {
    const __m128i idx0 =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k));
    const __m128i idx1 =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k + 4));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k),
                           _mm256_i32gather_pd(dense, idx0, 8), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k + 4),
                           _mm256_i32gather_pd(dense, idx1, 8), acc1);
  }
  for (; k + 4 <= nnz; k += 4) {
    const __m128i idx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices + k));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k),
                           _mm256_i32gather_pd(dense, idx, 8), acc0);
  }
  double sum = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; k < nnz; ++k) sum += values[k] * dense[indices[k]];
  return sum;
}

#undef BIASAUDIT_AVX2

}  // namespace

const KernelTable* Avx2Kernels() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{Isa::kAvx2,     "avx2",    DotAvx2,
                                 SquaredNormAvx2, AxpyAvx2, ScaleAvx2,
                                 SparseDotAvx2};
  return supported ? &table : nullptr;
}

#else

const KernelTable* Avx2Kernels() { return nullptr; }

#endif

}  // namespace biasaudit::simd

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


#ifndef BIASAUDIT_SIMD_KERNELS_H_
#define BIASAUDIT_SIMD_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops used by the vector-space recommenders and the
// knowledge-graph model. Every kernel has a scalar reference implementation;
// AVX2 (x86-64) and NEON (AArch64) variants are selected at runtime and are
// equivalence-tested against the reference. Results may differ from the
// reference only by floating-point reassociation.
namespace biasaudit::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_norm)(const double* a, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // sum_k values[k] * dense[indices[k]]
  double (*sparse_dot)(const std::uint32_t* indices, const double* values,
                       std::size_t nnz, const double* dense);
};

const KernelTable& ScalarKernels();
// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();
std::vector<const KernelTable*> AvailableKernels();

// Best available table, unless overridden by SetActiveIsa or the
// BIASAUDIT_SIMD environment variable ("scalar", "avx2", "neon").
const KernelTable& Active();
// Returns false (and leaves the selection unchanged) if `isa` is unavailable.
bool SetActiveIsa(Isa isa);

inline double Dot(std::span<const double> a, std::span<const double> b) {
  return Active().dot(a.data(), b.data(), a.size());
}

inline double SquaredNorm(std::span<const double> a) {
  return Active().squared_norm(a.data(), a.size());
}

inline void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  Active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void Scale(double alpha, std::span<double> x) {
  Active().scale(alpha, x.data(), x.size());
}

inline double SparseDot(std::span<const std::uint32_t> indices,
                        std::span<const double> values,
                        std::span<const double> dense) {
  return Active().sparse_dot(indices.data(), values.data(), indices.size(),
                             dense.data());
}

// Row-major square-matrix helpers built on the kernels above. `m` holds
// n*n entries.

// out = M x
inline void MatVec(std::span<const double> m, std::span<const double> x,
                   std::span<double> out) {
  const std::size_t n = x.size();
  const auto& k = Active();
  for (std::size_t i = 0; i < n; ++i) out[i] = k.dot(&m[i * n], x.data(), n);
}

// out = M^T x
inline void MatTVec(std::span<const double> m, std::span<const double> x,
                    std::span<double> out) {
  const std::size_t n = x.size();
  const auto& k = Active();
  for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < n; ++i) k.axpy(x[i], &m[i * n], out.data(), n);
}

// M += alpha * a b^T
inline void AddOuter(double alpha, std::span<const double> a,
                     std::span<const double> b, std::span<double> m) {
  const std::size_t n = a.size();
  const auto& k = Active();
  for (std::size_t i = 0; i < n; ++i) {
    k.axpy(alpha * a[i], b.data(), &m[i * n], n);
  }
}

}  // namespace biasaudit::simd

#endif  // BIASAUDIT_SIMD_KERNELS_H_

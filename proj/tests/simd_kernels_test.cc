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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace biasaudit::simd {
namespace {

std::vector<double> RandomVector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double Tolerance(std::span<const double> a, std::span<const double> b) {
  double mag = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mag += std::abs(a[i] * b[i]);
  return 1e-13 * (1.0 + mag);
}

class KernelEquivalence : public ::testing::TestWithParam<const KernelTable*> {};

TEST_P(KernelEquivalence, MatchesScalarReference) {
  const KernelTable& ref = ScalarKernels();
  const KernelTable& k = *GetParam();
  std::mt19937_64 rng(42);
  // Lengths straddle every unroll width and remainder.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 31u,
                        48u, 63u, 300u, 768u, 1001u}) {
    const auto a = RandomVector(n, rng);
    const auto b = RandomVector(n, rng);
    EXPECT_NEAR(k.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n),
                Tolerance(a, b))
        << k.name << " n=" << n;
    EXPECT_NEAR(k.squared_norm(a.data(), n), ref.squared_norm(a.data(), n),
                Tolerance(a, a))
        << k.name << " n=" << n;

    auto y1 = b;
    auto y2 = b;
    k.axpy(0.37, a.data(), y1.data(), n);
    ref.axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-14);

    auto s1 = a;
    auto s2 = a;
    k.scale(-1.5, s1.data(), n);
    ref.scale(-1.5, s2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(s1[i], s2[i]);

    // Sparse gather over a random subset of a dense vector of length 2n+1.
    const auto dense = RandomVector(2 * n + 1, rng);
    std::vector<std::uint32_t> idx;
    std::vector<double> vals;
    for (std::uint32_t i = 0; i < dense.size(); ++i) {
      if (rng() % 3 == 0) {
        idx.push_back(i);
        vals.push_back(RandomVector(1, rng)[0]);
      }
    }
    EXPECT_NEAR(k.sparse_dot(idx.data(), vals.data(), idx.size(), dense.data()),
                ref.sparse_dot(idx.data(), vals.data(), idx.size(), dense.data()),
                1e-12)
        << k.name << " nnz=" << idx.size();
  }
}

INSTANTIATE_TEST_SUITE_P(Available, KernelEquivalence,
                         ::testing::ValuesIn(AvailableKernels()),
                         [](const auto& info) {
                           return std::string(info.param->name);
                         });

TEST(KernelDispatch, ScalarAlwaysAvailableAndSelectable) {
  const auto available = AvailableKernels();
  ASSERT_FALSE(available.empty());
  EXPECT_EQ(available.front()->isa, Isa::kScalar);
  const Isa before = Active().isa;
  EXPECT_TRUE(SetActiveIsa(Isa::kScalar));
  EXPECT_EQ(Active().isa, Isa::kScalar);
  EXPECT_TRUE(SetActiveIsa(before));
}

TEST(KernelDispatch, UnavailableIsaIsRejected) {
  const Isa before = Active().isa;
#if defined(__x86_64__)
  EXPECT_FALSE(SetActiveIsa(Isa::kNeon));
#elif defined(__aarch64__)
  EXPECT_FALSE(SetActiveIsa(Isa::kAvx2));
#endif
  EXPECT_EQ(Active().isa, before);
}

TEST(MatrixHelpers, MatchDirectLoops) {
  std::mt19937_64 rng(7);
  const std::size_t n = 6;
  const auto m = RandomVector(n * n, rng);
  const auto x = RandomVector(n, rng);
  std::vector<double> mx(n), mtx(n);
  MatVec(m, x, mx);
  MatTVec(m, x, mtx);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += m[i * n + j] * x[j];
      col += m[j * n + i] * x[j];
    }
    EXPECT_NEAR(mx[i], row, 1e-13);
    EXPECT_NEAR(mtx[i], col, 1e-13);
  }
  auto acc = m;
  AddOuter(2.0, x, mx, acc);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_NEAR(acc[i * n + j], m[i * n + j] + 2.0 * x[i] * mx[j], 1e-13);
    }
  }
}

}  // namespace
}  // namespace biasaudit::simd

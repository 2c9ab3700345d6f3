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


#include "biasaudit/recommenders/vectors.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biasaudit/common/error.h"
#include "biasaudit/simd/kernels.h"

namespace biasaudit {
namespace {

double SparseSparseDot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.indices.size() && j < b.indices.size()) {
    if (a.indices[i] < b.indices[j]) {
      ++i;
    } else if (a.indices[i] > b.indices[j]) {
      ++j;
    } else {
      sum += a.values[i++] * b.values[j++];
    }
  }
  return sum;
}

double Norm(const ArticleVector& v) {
  if (const auto* s = std::get_if<SparseVector>(&v.values)) {
    return std::sqrt(simd::SquaredNorm(s->values));
  }
  return std::sqrt(simd::SquaredNorm(std::get<DenseVector>(v.values)));
}

double SafeCosine(double dot, double norm_a, double norm_b) {
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return dot / (norm_a * norm_b);
}

}  // namespace

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  return SafeCosine(simd::Dot(a, b), std::sqrt(simd::SquaredNorm(a)),
                    std::sqrt(simd::SquaredNorm(b)));
}

double Cosine(const ArticleVector& a, const ArticleVector& b) {
  if (a.dim != b.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.dim) + " vs " + std::to_string(b.dim));
  }
  const auto* sa = std::get_if<SparseVector>(&a.values);
  const auto* sb = std::get_if<SparseVector>(&b.values);
  double dot;
  if (sa != nullptr && sb != nullptr) {
    dot = SparseSparseDot(*sa, *sb);
  } else if (sa != nullptr) {
    dot = simd::SparseDot(sa->indices, sa->values, std::get<DenseVector>(b.values));
  } else if (sb != nullptr) {
    dot = simd::SparseDot(sb->indices, sb->values, std::get<DenseVector>(a.values));
  } else {
    return Cosine(std::get<DenseVector>(a.values), std::get<DenseVector>(b.values));
  }
  return SafeCosine(dot, Norm(a), Norm(b));
}

void VectorTable::Add(ArticleVector v) {
  if (v.dim != dim_ || v.is_sparse() != sparse_) {
    throw Error(ErrorCode::kDimensionMismatch,
                v.article_id + ": expected dim " + std::to_string(dim_));
  }
  if (const auto* s = std::get_if<SparseVector>(&v.values)) {
    if (s->indices.size() != s->values.size() ||
        (!s->indices.empty() && s->indices.back() >= dim_)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  v.article_id + ": sparse index out of range");
    }
  } else if (std::get<DenseVector>(v.values).size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                v.article_id + ": dense length differs from dim");
  }
  if (index_.contains(v.article_id)) {
    throw Error(ErrorCode::kDuplicateId, v.article_id);
  }
  index_.emplace(v.article_id, vectors_.size());
  norms_.push_back(Norm(v));
  vectors_.push_back(std::move(v));
}

const ArticleVector* VectorTable::Find(std::string_view article_id) const {
  auto it = index_.find(std::string(article_id));
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

const ArticleVector& VectorTable::At(std::string_view article_id) const {
  return vectors_[IndexOf(article_id)];
}

std::size_t VectorTable::IndexOf(std::string_view article_id) const {
  auto it = index_.find(std::string(article_id));
  if (it == index_.end()) {
    throw Error(ErrorCode::kUnknownArticle, std::string(article_id));
  }
  return it->second;
}

void VectorTable::Accumulate(std::size_t row, double weight,
                             std::span<double> accumulator) const {
  const ArticleVector& v = vectors_[row];
  if (const auto* s = std::get_if<SparseVector>(&v.values)) {
    for (std::size_t k = 0; k < s->indices.size(); ++k) {
      accumulator[s->indices[k]] += weight * s->values[k];
    }
  } else {
    simd::Axpy(weight, std::get<DenseVector>(v.values), accumulator);
  }
}

double VectorTable::DotDense(std::size_t row,
                             std::span<const double> dense) const {
  const ArticleVector& v = vectors_[row];
  if (const auto* s = std::get_if<SparseVector>(&v.values)) {
    return simd::SparseDot(s->indices, s->values, dense);
  }
  return simd::Dot(std::get<DenseVector>(v.values), dense);
}

std::vector<double> VectorTable::Similarities(
    std::span<const std::string> history,
    std::span<const std::string> candidates,
    HistoryAggregation aggregation) const {
  if (history.empty()) {
    throw Error(ErrorCode::kEmptyHistory, "cannot score against empty history");
  }
  std::vector<std::size_t> history_rows;
  history_rows.reserve(history.size());
  for (const auto& id : history) history_rows.push_back(IndexOf(id));
  std::vector<std::size_t> candidate_rows;
  candidate_rows.reserve(candidates.size());
  for (const auto& id : candidates) candidate_rows.push_back(IndexOf(id));

  std::vector<double> scores(candidates.size(), 0.0);
  std::vector<double> profile(dim_, 0.0);
  if (aggregation == HistoryAggregation::kMeanProfile) {
    const double w = 1.0 / static_cast<double>(history_rows.size());
    for (std::size_t row : history_rows) Accumulate(row, w, profile);
    const double profile_norm = std::sqrt(simd::SquaredNorm(profile));
    for (std::size_t c = 0; c < candidate_rows.size(); ++c) {
      const std::size_t row = candidate_rows[c];
      scores[c] = SafeCosine(DotDense(row, profile), profile_norm, norms_[row]);
    }
    return scores;
  }

  std::fill(scores.begin(), scores.end(),
            -std::numeric_limits<double>::infinity());
  for (std::size_t row : history_rows) {
    std::fill(profile.begin(), profile.end(), 0.0);
    Accumulate(row, 1.0, profile);
    for (std::size_t c = 0; c < candidate_rows.size(); ++c) {
      const std::size_t cand = candidate_rows[c];
      scores[c] = std::max(scores[c], SafeCosine(DotDense(cand, profile),
                                                 norms_[row], norms_[cand]));
    }
  }
  return scores;
}

}  // namespace biasaudit

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


#ifndef BIASAUDIT_RECOMMENDERS_VECTORS_H_
#define BIASAUDIT_RECOMMENDERS_VECTORS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace biasaudit {

// Sorted, strictly increasing indices; no explicit zeros.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
};

using DenseVector = std::vector<double>;

struct ArticleVector {
  std::string article_id;
  std::variant<DenseVector, SparseVector> values;
  std::size_t dim = 0;

  bool is_sparse() const {
    return std::holds_alternative<SparseVector>(values);
  }
};

// Cosine similarity; 0 when either vector has zero norm. Throws
// DimensionMismatch.
double Cosine(std::span<const double> a, std::span<const double> b);
double Cosine(const ArticleVector& a, const ArticleVector& b);

enum class HistoryAggregation {
  // Cosine against the mean of the history vectors.
  kMeanProfile,
  // Maximum cosine against any single history vector.
  kMaxSimilarity,
};

// Article vectors of one vectorizer: all dense or all sparse, one dimension.
// Immutable once built; concurrent reads are safe.
class VectorTable {
 public:
  VectorTable(std::size_t dim, bool sparse) : dim_(dim), sparse_(sparse) {}

  // Throws DimensionMismatch on a dim/kind disagreement, DuplicateId on a
  // repeated article id.
  void Add(ArticleVector v);

  std::size_t dim() const { return dim_; }
  bool sparse() const { return sparse_; }
  std::size_t size() const { return vectors_.size(); }
  std::span<const ArticleVector> vectors() const { return vectors_; }

  const ArticleVector* Find(std::string_view article_id) const;
  // Throws UnknownArticle.
  const ArticleVector& At(std::string_view article_id) const;

  // Similarity of every candidate to the history. Throws EmptyHistory or
  // UnknownArticle.
  std::vector<double> Similarities(std::span<const std::string> history,
                                   std::span<const std::string> candidates,
                                   HistoryAggregation aggregation) const;

 private:
  std::size_t IndexOf(std::string_view article_id) const;
  // Adds vectors_[row] * weight into a dense accumulator of size dim_.
  void Accumulate(std::size_t row, double weight,
                  std::span<double> accumulator) const;
  // Dot product of vectors_[row] with a dense vector of size dim_.
  double DotDense(std::size_t row, std::span<const double> dense) const;

  std::size_t dim_;
  bool sparse_;
  std::vector<ArticleVector> vectors_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace biasaudit

#endif  // BIASAUDIT_RECOMMENDERS_VECTORS_H_

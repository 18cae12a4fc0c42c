/* Copyright (C) 2026 tnc contributors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "tnc/rational.hpp"

#include <optional>
#include <vector>

namespace tnc {

/// Dense exact-rational matrix, stored as a list of columns. All
/// elimination routines pivot on the first nonzero entry so that results
/// are deterministic functions of the input, never of element magnitude.
class QMatrix {
 public:
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix from_columns(int rows, const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(j) * rows_ + i]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(j) * rows_ + i]; }

  Vec column(int j) const;
  std::vector<Vec> columns() const;

  int rank() const;
  Rational determinant() const;  // square only

  /// Solves A x = b for square nonsingular A; nullopt when singular.
  std::optional<Vec> solve(const Vec& b) const;

  /// A basis of the kernel {x : A x = 0}, deterministic (free variables
  /// in increasing column order, each set to one in turn).
  std::vector<Vec> kernel_basis() const;

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

/// Incremental rank tracker: feed vectors one at a time; try_add keeps a
/// vector iff it is independent of everything kept so far.
class RankExtender {
 public:
  explicit RankExtender(int dim) : dim_(dim) {}

  int rank() const { return static_cast<int>(pivot_rows_.size()); }
  /// Returns true (and absorbs v) iff v extends the current span.
  bool try_add(const Vec& v);
  /// Rank test without absorbing.
  bool in_span(const Vec& v) const;

 private:
  Vec reduce(const Vec& v) const;
  int dim_;
  std::vector<Vec> pivot_rows_;   // reduced vectors, each with a unique pivot
  std::vector<int> pivot_cols_;   // first nonzero index of each pivot row
};

/// Rank of a set of vectors.
int rank_of(const std::vector<Vec>& vecs, int dim);

/// Affine rank of a point set (dimension of its affine hull).
int affine_rank(const std::vector<Vec>& pts, int dim);

/// Deterministic basis of the intersection of span(A) and span(B).
std::vector<Vec> intersect_spans(const std::vector<Vec>& a, const std::vector<Vec>& b, int dim);

/// Reduces a spanning list to an independent sublist (first independent
/// vectors kept, in order).
std::vector<Vec> independent_subset(const std::vector<Vec>& vecs, int dim);

}  // namespace tnc

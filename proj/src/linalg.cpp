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
#include "tnc/linalg.hpp"

namespace tnc {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(int rows, const std::vector<Vec>& cols) {
  QMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows)
      throw InvalidArgument("from_columns: column length mismatch");
    for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec QMatrix::column(int j) const {
  Vec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

std::vector<Vec> QMatrix::columns() const {
  std::vector<Vec> cs;
  cs.reserve(cols_);
  for (int j = 0; j < cols_; ++j) cs.push_back(column(j));
  return cs;
}

int QMatrix::rank() const {
  QMatrix w = *this;
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int piv = -1;
    for (int i = r; i < rows_; ++i) {
      if (w.at(i, col) != 0) { piv = i; break; }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = col; j < cols_; ++j) std::swap(w.at(r, j), w.at(piv, j));
    for (int i = r + 1; i < rows_; ++i) {
      if (w.at(i, col) == 0) continue;
      Rational f = w.at(i, col) / w.at(r, col);
      for (int j = col; j < cols_; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    ++r;
  }
  return r;
}

Rational QMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("determinant: not square");
  QMatrix w = *this;
  Rational det(1);
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i) {
      if (w.at(i, col) != 0) { piv = i; break; }
    }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      for (int j = col; j < cols_; ++j) std::swap(w.at(col, j), w.at(piv, j));
      det = -det;
    }
    det *= w.at(col, col);
    for (int i = col + 1; i < rows_; ++i) {
      if (w.at(i, col) == 0) continue;
      Rational f = w.at(i, col) / w.at(col, col);
      for (int j = col; j < cols_; ++j) w.at(i, j) -= f * w.at(col, j);
    }
  }
  return det;
}

std::optional<Vec> QMatrix::solve(const Vec& b) const {
  if (rows_ != cols_) throw InvalidArgument("solve: not square");
  if (static_cast<int>(b.size()) != rows_) throw InvalidArgument("solve: rhs length mismatch");
  QMatrix w = *this;
  Vec rhs = b;
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i) {
      if (w.at(i, col) != 0) { piv = i; break; }
    }
    if (piv < 0) return std::nullopt;
    if (piv != col) {
      for (int j = col; j < cols_; ++j) std::swap(w.at(col, j), w.at(piv, j));
      std::swap(rhs[col], rhs[piv]);
    }
    for (int i = col + 1; i < rows_; ++i) {
      if (w.at(i, col) == 0) continue;
      Rational f = w.at(i, col) / w.at(col, col);
      for (int j = col; j < cols_; ++j) w.at(i, j) -= f * w.at(col, j);
      rhs[i] -= f * rhs[col];
    }
  }
  Vec x(cols_);
  for (int i = cols_ - 1; i >= 0; --i) {
    Rational s = rhs[i];
    for (int j = i + 1; j < cols_; ++j) s -= w.at(i, j) * x[j];
    x[i] = s / w.at(i, i);
  }
  return x;
}

std::vector<Vec> QMatrix::kernel_basis() const {
  // Reduced row echelon form, then back-substitution per free column.
  QMatrix w = *this;
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int piv = -1;
    for (int i = r; i < rows_; ++i) {
      if (w.at(i, col) != 0) { piv = i; break; }
    }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(w.at(r, j), w.at(piv, j));
    Rational p = w.at(r, col);
    for (int j = 0; j < cols_; ++j) w.at(r, j) /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || w.at(i, col) == 0) continue;
      Rational f = w.at(i, col);
      for (int j = 0; j < cols_; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    pivot_col_of_row.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivot_col_of_row) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols_, Rational(0));
    x[free] = 1;
    for (int row = 0; row < r; ++row) x[pivot_col_of_row[row]] = -w.at(row, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

Vec RankExtender::reduce(const Vec& v) const {
  Vec w = v;
  for (std::size_t k = 0; k < pivot_rows_.size(); ++k) {
    int pc = pivot_cols_[k];
    if (w[pc] == 0) continue;
    Rational f = w[pc] / pivot_rows_[k][pc];
    for (int i = 0; i < dim_; ++i) w[i] -= f * pivot_rows_[k][i];
  }
  return w;
}

bool RankExtender::try_add(const Vec& v) {
  if (static_cast<int>(v.size()) != dim_) throw InvalidArgument("try_add: dimension mismatch");
  Vec w = reduce(v);
  for (int i = 0; i < dim_; ++i) {
    if (w[i] != 0) {
      pivot_rows_.push_back(std::move(w));
      pivot_cols_.push_back(i);
      return true;
    }
  }
  return false;
}

bool RankExtender::in_span(const Vec& v) const {
  Vec w = reduce(v);
  for (const Rational& x : w)
    if (x != 0) return false;
  return true;
}

int rank_of(const std::vector<Vec>& vecs, int dim) {
  RankExtender ext(dim);
  for (const Vec& v : vecs) ext.try_add(v);
  return ext.rank();
}

int affine_rank(const std::vector<Vec>& pts, int dim) {
  if (pts.empty()) return -1;
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rank_of(diffs, dim);
}

std::vector<Vec> intersect_spans(const std::vector<Vec>& a, const std::vector<Vec>& b, int dim) {
  if (a.empty() || b.empty()) return {};
  // x in both spans iff x = A u = B w; solve [A | -B] (u; w) = 0.
  QMatrix m(dim, static_cast<int>(a.size() + b.size()));
  for (std::size_t j = 0; j < a.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = a[j][i];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(a.size() + j)) = -b[j][i];
  std::vector<Vec> result;
  RankExtender ext(dim);
  for (const Vec& ker : m.kernel_basis()) {
    Vec x(dim, Rational(0));
    for (std::size_t j = 0; j < a.size(); ++j)
      for (int i = 0; i < dim; ++i) x[i] += ker[j] * a[j][i];
    if (ext.try_add(x)) result.push_back(std::move(x));
  }
  return result;
}

std::vector<Vec> independent_subset(const std::vector<Vec>& vecs, int dim) {
  std::vector<Vec> out;
  RankExtender ext(dim);
  for (const Vec& v : vecs)
    if (ext.try_add(v)) out.push_back(v);
  return out;
}

}  // namespace tnc

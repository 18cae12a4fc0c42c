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
#include "tnc/fdnorm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace tnc {

FiniteDimNorm::FiniteDimNorm(QMatrix basis, std::vector<Rational> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (basis_.rows() != basis_.cols()) throw InvalidArgument("FiniteDimNorm: basis not square");
  if (static_cast<int>(values_.size()) != basis_.rows())
    throw InvalidArgument("FiniteDimNorm: value count mismatch");
  if (basis_.determinant() == 0) throw InvalidArgument("FiniteDimNorm: basis is singular");
}

FiniteDimNorm FiniteDimNorm::diagonal(std::vector<Rational> values) {
  int n = static_cast<int>(values.size());
  return FiniteDimNorm(QMatrix::identity(n), std::move(values));
}

FiniteDimNorm FiniteDimNorm::trivial(int n) {
  return diagonal(std::vector<Rational>(n, Rational(0)));
}

ExtRational FiniteDimNorm::evaluate(const Vec& v) const {
  if (static_cast<int>(v.size()) != dim()) throw InvalidArgument("evaluate: dimension mismatch");
  auto coords = basis_.solve(v);
  bool any = false;
  Rational best(0);
  for (int i = 0; i < dim(); ++i) {
    if ((*coords)[i] == 0) continue;
    if (!any || values_[i] < best) best = values_[i];
    any = true;
  }
  return any ? ExtRational::of(best) : ExtRational::infinity();
}

std::vector<Rational> FiniteDimNorm::jump_values() const {
  std::vector<Rational> js = values_;
  std::sort(js.begin(), js.end(), std::greater<Rational>());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  return js;
}

std::vector<Vec> FiniteDimNorm::filtration_subspace(const Rational& lambda) const {
  std::vector<Vec> cols;
  for (int j = 0; j < dim(); ++j)
    if (values_[j] >= lambda) cols.push_back(basis_.column(j));
  return cols;
}

int FiniteDimNorm::filtration_dim(const Rational& lambda) const {
  int c = 0;
  for (const Rational& v : values_)
    if (v >= lambda) ++c;
  return c;
}

std::vector<Rational> FiniteDimNorm::spectrum() const {
  std::vector<Rational> s = values_;
  std::sort(s.begin(), s.end(), std::greater<Rational>());
  return s;
}

Rational FiniteDimNorm::volume() const {
  Rational s(0);
  for (const Rational& v : values_) s += v;
  return s / dim();
}

std::pair<Rational, Rational> FiniteDimNorm::lambda_extremes() const {
  Rational mn = values_[0], mx = values_[0];
  for (const Rational& v : values_) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return {mn, mx};
}

FiniteDimNorm FiniteDimNorm::translated(const Rational& c) const {
  std::vector<Rational> vals = values_;
  for (Rational& v : vals) v += c;
  return FiniteDimNorm(basis_, std::move(vals));
}

FiniteDimNorm FiniteDimNorm::scaled(const Rational& t) const {
  if (t <= 0) throw InvalidArgument("scaled: factor must be positive");
  std::vector<Rational> vals = values_;
  for (Rational& v : vals) v *= t;
  return FiniteDimNorm(basis_, std::move(vals));
}

bool is_orthogonal_basis_for(const std::vector<Vec>& basis, const FiniteDimNorm& chi) {
  const int n = chi.dim();
  if (static_cast<int>(basis.size()) != n) return false;
  if (rank_of(basis, n) != n) return false;
  for (const Rational& lambda : chi.jump_values()) {
    int count = 0;
    for (const Vec& b : basis) {
      ExtRational v = chi.evaluate(b);
      if (!v.infinite && v.value >= lambda) ++count;
    }
    if (count != chi.filtration_dim(lambda)) return false;
  }
  return true;
}

namespace {

// Subspaces F^lambda and F^{>lambda} for all jump values, as column lists.
struct Flag {
  std::vector<Rational> jumps;                 // descending
  std::vector<std::vector<Vec>> at;            // F^{jumps[i]}
  std::vector<std::vector<Vec>> above;         // F^{> jumps[i]}
};

Flag make_flag(const FiniteDimNorm& chi) {
  Flag f;
  f.jumps = chi.jump_values();
  for (std::size_t i = 0; i < f.jumps.size(); ++i) {
    f.at.push_back(chi.filtration_subspace(f.jumps[i]));
    f.above.push_back(i == 0 ? std::vector<Vec>{} : chi.filtration_subspace(f.jumps[i - 1]));
  }
  return f;
}

}  // namespace

std::vector<Vec> joint_basis(const FiniteDimNorm& chi, const FiniteDimNorm& chi2) {
  const int n = chi.dim();
  if (chi2.dim() != n) throw InvalidArgument("joint_basis: dimension mismatch");
  Flag f = make_flag(chi), g = make_flag(chi2);

  std::vector<Vec> result;
  for (std::size_t a = 0; a < f.jumps.size(); ++a) {
    for (std::size_t b = 0; b < g.jumps.size(); ++b) {
      // W = F^l  cap G^m; U = (F^{>l} cap G^m) + (F^l cap G^{>m}).
      std::vector<Vec> w = intersect_spans(f.at[a], g.at[b], n);
      if (w.empty()) continue;
      std::vector<Vec> u1 = intersect_spans(f.above[a], g.at[b], n);
      std::vector<Vec> u2 = intersect_spans(f.at[a], g.above[b], n);
      RankExtender ext(n);
      for (const Vec& v : u1) ext.try_add(v);
      for (const Vec& v : u2) ext.try_add(v);
      int base_rank = ext.rank();
      int needed = static_cast<int>(w.size()) - base_rank;
      // Inclusion-exclusion count of the graded piece; selection below
      // must produce exactly this many vectors.
      std::vector<Vec> u12 = intersect_spans(u1, u2, n);
      int expected = static_cast<int>(w.size()) - static_cast<int>(u1.size()) -
                     static_cast<int>(u2.size()) + static_cast<int>(u12.size());
      for (const Vec& cand : w) {
        if (ext.rank() - base_rank == needed) break;
        if (ext.try_add(cand)) result.push_back(cand);
      }
      if (needed != expected || ext.rank() - base_rank != needed)
        throw ComputeError("joint_basis: graded piece dimension mismatch");
    }
  }
  if (rank_of(result, n) != n) throw ComputeError("joint_basis: output is not a basis");
  if (!is_orthogonal_basis_for(result, chi) || !is_orthogonal_basis_for(result, chi2))
    throw ComputeError("joint_basis: orthogonality certificate failed");
  return result;
}

namespace {

// Fast path: two norms sharing the diagonalizing basis are jointly
// orthogonal in it already.
bool same_basis(const FiniteDimNorm& a, const FiniteDimNorm& b) {
  if (a.dim() != b.dim()) return false;
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < a.dim(); ++i)
      if (a.basis().at(i, j) != b.basis().at(i, j)) return false;
  return true;
}

}  // namespace

std::vector<Rational> relative_spectrum(const FiniteDimNorm& chi, const FiniteDimNorm& chi2) {
  if (chi.dim() != chi2.dim()) throw InvalidArgument("relative_spectrum: dimension mismatch");
  std::vector<Rational> diffs;
  if (same_basis(chi, chi2)) {
    for (int i = 0; i < chi.dim(); ++i) diffs.push_back(chi.values()[i] - chi2.values()[i]);
  } else {
    for (const Vec& b : joint_basis(chi, chi2)) {
      ExtRational x = chi.evaluate(b), y = chi2.evaluate(b);
      diffs.push_back(x.value - y.value);
    }
  }
  std::sort(diffs.begin(), diffs.end(), std::greater<Rational>());
  return diffs;
}

Rational sum_abs_pow(const std::vector<Rational>& spectrum, unsigned p) {
  const long n = static_cast<long>(spectrum.size());
  Rational total(0);
#ifdef TNC_HAVE_OPENMP
#pragma omp parallel
  {
    Rational local(0);
#pragma omp for nowait
    for (long i = 0; i < n; ++i) {
      Rational a = spectrum[i] < 0 ? Rational(-spectrum[i]) : spectrum[i];
      local += pow_rational(a, p);
    }
#pragma omp critical
    total += local;
  }
#else
  total = reference::sum_abs_pow(spectrum, p);
#endif
  return total;
}

namespace reference {
Rational sum_abs_pow(const std::vector<Rational>& spectrum, unsigned p) {
  Rational total(0);
  for (const Rational& x : spectrum) {
    Rational a = x < 0 ? Rational(-x) : x;
    total += pow_rational(a, p);
  }
  return total;
}
}  // namespace reference

Rational distance_l1(const FiniteDimNorm& chi, const FiniteDimNorm& chi2) {
  return distance_pow(chi, chi2, 1);
}

Rational distance_sup(const FiniteDimNorm& chi, const FiniteDimNorm& chi2) {
  Rational best(0);
  for (const Rational& x : relative_spectrum(chi, chi2)) {
    Rational a = x < 0 ? Rational(-x) : x;
    best = std::max(best, a);
  }
  return best;
}

Rational distance_pow(const FiniteDimNorm& chi, const FiniteDimNorm& chi2, unsigned p) {
  if (p < 1) throw InvalidArgument("distance_pow: p must be >= 1");
  auto spec = relative_spectrum(chi, chi2);
  return sum_abs_pow(spec, p) / static_cast<int>(spec.size());
}

double distance_approx(const FiniteDimNorm& chi, const FiniteDimNorm& chi2, double p) {
  if (p < 1) throw InvalidArgument("distance_approx: p must be >= 1");
  auto spec = relative_spectrum(chi, chi2);
  if (std::isinf(p)) return to_double(distance_sup(chi, chi2));
  double s = 0;
  for (const Rational& x : spec) s += std::pow(std::abs(to_double(x)), p);
  return std::pow(s / static_cast<double>(spec.size()), 1.0 / p);
}

FiniteDimNorm min_norm(const FiniteDimNorm& chi, const FiniteDimNorm& chi2) {
  if (chi.dim() != chi2.dim()) throw InvalidArgument("min_norm: dimension mismatch");
  std::vector<Vec> basis =
      same_basis(chi, chi2) ? chi.basis().columns() : joint_basis(chi, chi2);
  std::vector<Rational> vals;
  if (same_basis(chi, chi2)) {
    for (int i = 0; i < chi.dim(); ++i) vals.push_back(std::min(chi.values()[i], chi2.values()[i]));
  } else {
    for (const Vec& b : basis) {
      ExtRational x = chi.evaluate(b), y = chi2.evaluate(b);
      vals.push_back(std::min(x.value, y.value));
    }
  }
  return FiniteDimNorm(QMatrix::from_columns(chi.dim(), basis), std::move(vals));
}

DiscreteMeasure spectral_measure(const FiniteDimNorm& chi, const FiniteDimNorm& chi2) {
  return DiscreteMeasure::from_scalar_counts(relative_spectrum(chi, chi2));
}

DiscreteMeasure spectral_measure(const FiniteDimNorm& chi) {
  return DiscreteMeasure::from_scalar_counts(chi.spectrum());
}

FiniteDimNorm gram_schmidt_retract(const FiniteDimNorm& chi, const QMatrix& e) {
  const int n = chi.dim();
  if (e.rows() != n || e.cols() != n) throw InvalidArgument("gram_schmidt_retract: basis shape mismatch");
  if (e.determinant() == 0) throw InvalidArgument("gram_schmidt_retract: basis is singular");
  std::vector<Rational> vals(n);
  for (int i = 0; i < n; ++i) {
    // Largest jump value lambda with e_i in F^lambda + span(e_1..e_{i-1}).
    bool found = false;
    for (const Rational& lambda : chi.jump_values()) {
      RankExtender ext(n);
      for (const Vec& c : chi.filtration_subspace(lambda)) ext.try_add(c);
      for (int j = 0; j < i; ++j) ext.try_add(e.column(j));
      if (ext.in_span(e.column(i))) {
        vals[i] = lambda;
        found = true;
        break;
      }
    }
    if (!found) throw ComputeError("gram_schmidt_retract: vector escapes the full filtration");
  }
  return FiniteDimNorm(e, std::move(vals));
}

std::vector<std::vector<int>> monomial_exponents(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, remaining - k);
    }
  };
  rec(0, m);
  return out;
}

namespace {

// Dense polynomial in the monomial basis of a fixed degree is awkward;
// products of linear forms are expanded in a sparse exponent map instead.
using Poly = std::map<std::vector<int>, Rational>;

Poly linear_form(const Vec& column) {
  Poly p;
  const int n = static_cast<int>(column.size());
  for (int i = 0; i < n; ++i) {
    if (column[i] == 0) continue;
    std::vector<int> e(n, 0);
    e[i] = 1;
    p[e] = column[i];
  }
  return p;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  }
  return r;
}

}  // namespace

FiniteDimNorm symmetric_power_norm(const FiniteDimNorm& chi, int m) {
  if (m < 1) throw InvalidArgument("symmetric_power_norm: m must be >= 1");
  const int n = chi.dim();
  auto exps = monomial_exponents(n, m);
  const int big = static_cast<int>(exps.size());
  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < big; ++i) index_of[exps[i]] = i;

  QMatrix basis(big, big);
  std::vector<Rational> values(big);
  for (int col = 0; col < big; ++col) {
    // Expansion of prod_i (basis column i)^{e_i} in standard monomials.
    Poly prod;
    prod[std::vector<int>(n, 0)] = 1;
    Rational val(0);
    for (int i = 0; i < n; ++i) {
      Poly lf = linear_form(chi.basis().column(i));
      for (int k = 0; k < exps[col][i]; ++k) prod = multiply(prod, lf);
      val += exps[col][i] * chi.values()[i];
    }
    values[col] = val;
    for (const auto& [e, coeff] : prod) basis.at(index_of.at(e), col) = coeff;
  }
  return FiniteDimNorm(std::move(basis), std::move(values));
}

}  // namespace tnc

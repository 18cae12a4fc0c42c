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

#include "tnc/linalg.hpp"
#include "tnc/measure.hpp"
#include "tnc/rational.hpp"

namespace tnc {

/// A non-Archimedean norm on Q^N given by a diagonalizing basis (columns
/// of an invertible matrix) and the value attached to each basis vector.
/// Evaluation follows the min rule over nonzero coordinates; the zero
/// vector evaluates to +infinity.
class FiniteDimNorm {
 public:
  FiniteDimNorm(QMatrix basis, std::vector<Rational> values);

  /// Norm diagonal in the standard basis.
  static FiniteDimNorm diagonal(std::vector<Rational> values);
  /// The trivial norm (all values zero) in dimension n.
  static FiniteDimNorm trivial(int n);

  int dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  const std::vector<Rational>& values() const { return values_; }

  ExtRational evaluate(const Vec& v) const;

  /// Distinct jump values, descending.
  std::vector<Rational> jump_values() const;
  /// Basis columns spanning F^lambda = {chi >= lambda}.
  std::vector<Vec> filtration_subspace(const Rational& lambda) const;
  /// dim F^lambda.
  int filtration_dim(const Rational& lambda) const;

  /// Sorted (descending) spectrum of the norm itself.
  std::vector<Rational> spectrum() const;
  Rational volume() const;
  std::pair<Rational, Rational> lambda_extremes() const;  // (min, max)

  FiniteDimNorm translated(const Rational& c) const;
  FiniteDimNorm scaled(const Rational& t) const;  // t > 0

 private:
  QMatrix basis_;
  std::vector<Rational> values_;
};

/// True iff the given vectors form a basis on which the norm is computed
/// by the min rule, certified by the dimension-count criterion: for every
/// jump value, the number of basis vectors with norm >= lambda equals
/// dim F^lambda.
bool is_orthogonal_basis_for(const std::vector<Vec>& basis, const FiniteDimNorm& chi);

/// A simultaneous orthogonal basis for two norms, built pairwise over
/// jump values in lexicographically decreasing order; complements are
/// selected by Gaussian elimination with first-nonzero pivoting.
std::vector<Vec> joint_basis(const FiniteDimNorm& chi, const FiniteDimNorm& chi2);

/// Sorted (descending) list chi(b_i) - chi2(b_i) over a joint basis.
std::vector<Rational> relative_spectrum(const FiniteDimNorm& chi, const FiniteDimNorm& chi2);

Rational distance_l1(const FiniteDimNorm& chi, const FiniteDimNorm& chi2);
Rational distance_sup(const FiniteDimNorm& chi, const FiniteDimNorm& chi2);
/// d_p(chi, chi2)^p for integer p >= 1 (exact).
Rational distance_pow(const FiniteDimNorm& chi, const FiniteDimNorm& chi2, unsigned p);
/// Binary64 companion for arbitrary p >= 1 (the metric itself, with root).
double distance_approx(const FiniteDimNorm& chi, const FiniteDimNorm& chi2, double p);

/// Pointwise minimum chi ^ chi2, realized on a joint orthogonal basis.
FiniteDimNorm min_norm(const FiniteDimNorm& chi, const FiniteDimNorm& chi2);

/// Finite-level spectral measure sigma(chi, chi2) = (1/N) sum of Diracs
/// at the relative spectrum.
DiscreteMeasure spectral_measure(const FiniteDimNorm& chi, const FiniteDimNorm& chi2);
DiscreteMeasure spectral_measure(const FiniteDimNorm& chi);

/// Gram-Schmidt retraction onto the apartment of the basis e: the result
/// is diagonal in e with rho(chi)(e_i) the largest lambda such that e_i
/// lies in F^lambda + span(e_1..e_{i-1}). Volume-preserving.
FiniteDimNorm gram_schmidt_retract(const FiniteDimNorm& chi, const QMatrix& e);

/// Induced norm on the m-th symmetric power, diagonal in the monomial
/// basis induced by chi's diagonalizing basis, with additive values.
FiniteDimNorm symmetric_power_norm(const FiniteDimNorm& chi, int m);

/// Degree-m monomial exponents over n variables, lexicographically
/// decreasing (e1^m first).
std::vector<std::vector<int>> monomial_exponents(int n, int m);

namespace reference {
/// Serial reference for the p-power spectrum sum used by distance_pow.
Rational sum_abs_pow(const std::vector<Rational>& spectrum, unsigned p);
}

/// Parallel kernel behind distance_pow (exact reduction; bitwise equal to
/// the serial reference).
Rational sum_abs_pow(const std::vector<Rational>& spectrum, unsigned p);

}  // namespace tnc

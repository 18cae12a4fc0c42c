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

#include "tnc/fdnorm.hpp"
#include "tnc/measure.hpp"
#include "tnc/plfunction.hpp"

#include <variant>

namespace tnc {

/// Closed rational interval, used for rigorous enclosures of quantities
/// that are not exactly computable from grid samples.
struct IntervalQ {
  Rational lo, hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

/// Concave function on an interval known only through equally spaced
/// samples. Midpoint concavity on the grid is verified at construction;
/// integral and sup queries return rigorous enclosures obtained from the
/// chord (lower) and one-sided slope extension (upper) bounds.
class SampledConcave {
 public:
  SampledConcave(Rational lo, Rational hi, std::vector<Rational> values);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational pitch() const { return pitch_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t grid_size() const { return values_.size(); }

  Rational grid_point(std::size_t k) const { return lo_ + pitch_ * static_cast<long>(k); }
  /// Exact value when alpha lies on the grid; nullopt otherwise.
  std::optional<Rational> value_at(const Rational& alpha) const;

  IntervalQ integral_bounds() const;
  IntervalQ sup_bounds() const;
  /// Enclosure of sup_alpha { g(alpha) - xi * alpha }.
  IntervalQ conjugate_bounds(const Rational& xi) const;

 private:
  Rational lo_, hi_, pitch_;
  std::vector<Rational> values_;
};

/// Toric homogeneous norm: a bounded concave function g on the moment
/// polytope, either exact piecewise-linear data or a sampled grid.
class ToricHomNorm {
 public:
  ToricHomNorm(RationalPolytope polytope, ConcavePLFunction g);
  ToricHomNorm(RationalPolytope polytope, SampledConcave g);

  static ToricHomNorm trivial(const RationalPolytope& p);

  const RationalPolytope& polytope() const { return polytope_; }
  bool is_pl() const { return std::holds_alternative<ConcavePLFunction>(data_); }
  const ConcavePLFunction& pl() const;
  const SampledConcave& sampled() const;

  ToricHomNorm shift(const Rational& c) const;
  ToricHomNorm scale(const Rational& t) const;

 private:
  RationalPolytope polytope_;
  std::variant<ConcavePLFunction, SampledConcave> data_;
};

/// Toric norm truncated to finitely many degrees: a superadditive value
/// table h(m, alpha) on the lattice points of m*P for m in {d, 2d, ..., M*d}.
class TruncatedToricNorm {
 public:
  /// values[r] holds h((r+1)*d, .) aligned with P.lattice_points((r+1)*d).
  TruncatedToricNorm(RationalPolytope polytope, long base_degree,
                     std::vector<std::vector<Rational>> values,
                     std::optional<Rational> declared_bound = std::nullopt);

  const RationalPolytope& polytope() const { return polytope_; }
  long base_degree() const { return base_degree_; }
  long level_count() const { return static_cast<long>(values_.size()); }
  long level_degree(long r) const { return base_degree_ * (r + 1); }
  bool has_degree(long m) const { return m % base_degree_ == 0 && m / base_degree_ <= level_count() && m >= base_degree_; }

  const std::vector<Vec>& lattice(long r) const { return lattice_[r]; }
  const std::vector<Rational>& level_values(long r) const { return values_[r]; }
  Rational value_at(long m, const Vec& alpha) const;

  /// Smallest C with |h(m, .)| <= C*m over the table.
  const Rational& linear_bound() const { return linear_bound_; }

  TruncatedToricNorm rounded_down() const;

 private:
  RationalPolytope polytope_;
  long base_degree_;
  std::vector<std::vector<Vec>> lattice_;
  std::vector<std::vector<Rational>> values_;
  Rational linear_bound_;
};

namespace reference {
/// Serial superadditivity scan (parallel kernel in the constructor).
bool superadditive(const TruncatedToricNorm& t);
}
bool superadditive_check(const RationalPolytope& p, long base_degree,
                         const std::vector<std::vector<Vec>>& lattice,
                         const std::vector<std::vector<Rational>>& values, bool parallel);

// ---- construction of toric norms ----

/// Norm of the toric valuation at xi, normalized so that min g = 0:
/// g(alpha) = <xi, alpha> - min_P <xi, .>.
ToricHomNorm valuation_norm(const RationalPolytope& p, const Vec& xi);

/// Divisorial norm g = min_j { <xi_j, alpha> + c_j }.
ToricHomNorm divisorial_norm(const RationalPolytope& p, std::vector<AffinePiece> pieces);

/// Tabulates a PL norm at degrees d, 2d, ..., M*d.
TruncatedToricNorm tabulate(const ToricHomNorm& chi, long d, long levels);

/// Superadditive closure of degree-d data: the table of the norm
/// generated in degree d, filled level by level over lattice
/// decompositions. Throws when some lattice point of a higher dilate has
/// no decomposition into degree-d points.
TruncatedToricNorm generated_table(const RationalPolytope& p, long d,
                                   const std::vector<Rational>& degree_d_values, long levels);

// ---- metrics, volume, spectra ----

Rational distance_pow(const ToricHomNorm& a, const ToricHomNorm& b, unsigned p);
Rational distance_l1(const ToricHomNorm& a, const ToricHomNorm& b);
Rational distance_sup(const ToricHomNorm& a, const ToricHomNorm& b);
/// Enclosure version; exact (width 0) when both inputs are PL.
IntervalQ distance_l1_bounds(const ToricHomNorm& a, const ToricHomNorm& b);

Rational volume(const ToricHomNorm& chi);
IntervalQ volume_bounds(const ToricHomNorm& chi);
Rational lambda_max(const ToricHomNorm& chi);

/// Limit spectral measure of a PL norm (dimension <= 2): the pushforward
/// of the normalized polytope measure under g.
PLMeasure1D spectral_measure(const ToricHomNorm& chi);
/// Grid empirical spectral measure of a sampled norm.
DiscreteMeasure spectral_measure_empirical(const ToricHomNorm& chi);

/// Finite-level spectral measure of a truncated norm, scaled by 1/m.
DiscreteMeasure spectral_measure_truncated(const TruncatedToricNorm& chi, long m);

/// Fubini-Study value at the valuation xi, in the normalization with
/// fs(valuation_norm(xi), xi) = 0:
///   fs(g, xi) = sup_P { g - <xi, .> } + min_P <xi, .>.
Rational fs_at(const ToricHomNorm& chi, const Vec& xi);
/// Enclosure version; exact (width 0) for PL data.
IntervalQ fs_bounds(const ToricHomNorm& chi, const Vec& xi);

/// Gradient measure of the PL data: one atom per active piece at its
/// slope, weighted by the normalized cell volume.
DiscreteMeasure monge_ampere(const ToricHomNorm& chi);

/// Degree-d homogenized approximant: the concave envelope of the scaled
/// degree-d samples. Requires d*P to be a lattice polytope.
ToricHomNorm canonical_approximant(const ToricHomNorm& chi, long d);
ToricHomNorm canonical_approximant(const TruncatedToricNorm& chi, long d);

struct FiniteTypeResult {
  bool finite_type;
  std::string reason;                      // set when finite_type is false
  std::vector<AffinePiece> certificate;    // Legendre max-form pieces when true
};
FiniteTypeResult is_finite_type(const ToricHomNorm& chi);

struct QuotientDistance {
  Rational value;      // inf_c d_1(chi + c, chi2)
  Rational minimizer;  // an optimal c
};
/// Translation-invariant d_1, minimized at c = -median of (g2 - g).
QuotientDistance quotient_d1(const ToricHomNorm& chi, const ToricHomNorm& chi2);

/// Diagonal restriction of the norm to the lattice points of m*P.
FiniteDimNorm restrict_to_level(const ToricHomNorm& chi, long m);

namespace reference {
std::vector<Rational> level_values(const ToricHomNorm& chi, long m, const std::vector<Vec>& pts);
}
std::vector<Rational> level_values(const ToricHomNorm& chi, long m, const std::vector<Vec>& pts);

}  // namespace tnc

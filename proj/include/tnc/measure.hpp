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

#include "tnc/plfunction.hpp"

#include <string>
#include <vector>

namespace tnc {

/// Finitely many distinct rational atoms with positive rational masses
/// summing to one. Atoms live in Q^d (d = 1 for spectral measures, d = n
/// for gradient measures).
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<Vec> atoms, std::vector<Rational> masses);

  static DiscreteMeasure dirac(Vec atom);
  static DiscreteMeasure dirac_scalar(Rational value);
  /// Merges duplicate atoms before validation.
  static DiscreteMeasure from_weighted(std::vector<Vec> atoms, std::vector<Rational> masses);
  static DiscreteMeasure from_scalar_counts(const std::vector<Rational>& values);

  int dim() const { return atoms_.empty() ? 0 : static_cast<int>(atoms_[0].size()); }
  const std::vector<Vec>& atoms() const { return atoms_; }
  const std::vector<Rational>& masses() const { return masses_; }
  Rational mass_at(const Vec& atom) const;

  // Pushforward operations for scalar (dim 1) measures.
  DiscreteMeasure reflected() const;
  DiscreteMeasure translated(const Rational& c) const;
  DiscreteMeasure dilated(const Rational& t) const;  // t > 0
  DiscreteMeasure clamped_below_zero() const;        // lambda -> max(lambda, 0)

  Rational barycenter() const;                 // dim 1
  Rational moment_pow(unsigned p) const;       // dim 1: integral of lambda^p
  Rational abs_moment_pow(unsigned p) const;   // dim 1: integral of |lambda|^p

  bool operator==(const DiscreteMeasure& o) const {
    return atoms_ == o.atoms_ && masses_ == o.masses_;
  }

 private:
  std::vector<Vec> atoms_;      // lex-ascending
  std::vector<Rational> masses_;
};

/// Exact 1-Wasserstein distance between scalar discrete measures.
Rational wasserstein1(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Probability measure on the line with a piecewise-polynomial CDF of
/// degree <= 2 plus finitely many jumps. The spectral measure of a
/// concave PL norm is continuous except for at most one jump at the top
/// of its support, which construction verifies on request.
class PLMeasure1D {
 public:
  struct Jump {
    Rational location;
    Rational mass;
  };

  /// breakpoints t_0 < ... < t_K; poly[k] gives the CDF coefficients
  /// (constant first) on [t_k, t_{k+1}]; jumps are located at breakpoints.
  PLMeasure1D(std::vector<Rational> breakpoints, std::vector<std::vector<Rational>> poly,
              std::vector<Jump> jumps);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Jump>& jumps() const { return jumps_; }

  Rational support_min() const { return breakpoints_.front(); }
  Rational support_max() const { return breakpoints_.back(); }

  /// CDF value mu((-inf, t]); right-continuous, exact.
  Rational cdf(const Rational& t) const;

  /// Exact integral of lambda^p.
  Rational moment_pow(unsigned p) const;
  Rational abs_moment_pow(unsigned p) const;

  /// True when all jump mass sits at the top of the support.
  bool jumps_only_at_top() const;

  /// CSV table "t,cdf" at the exact breakpoints plus extra uniform
  /// sample points (exact rationals throughout).
  std::string csv_table(int extra_uniform_points) const;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<std::vector<Rational>> poly_;
  std::vector<Jump> jumps_;
};

/// Distribution function of a cellwise-affine map: given cells with an
/// affine value function on each, returns the pushforward of normalized
/// Lebesgue measure (total = the normalizing volume). Exact for ambient
/// dimension <= 2.
PLMeasure1D pushforward_cdf(const std::vector<std::pair<RationalPolytope, AffinePiece>>& cellwise,
                            const Rational& total_volume);

/// Smallest median of the pushforward (the smallest t with CDF >= 1/2).
/// Throws ComputeError when the crossing is irrational (possible for
/// quadratic CDF pieces in dimension 2).
Rational pushforward_median(const std::vector<std::pair<RationalPolytope, AffinePiece>>& cellwise,
                            const Rational& total_volume);

}  // namespace tnc

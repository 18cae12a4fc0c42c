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

#include "tnc/polytope.hpp"

#include <utility>
#include <vector>

namespace tnc {

/// Affine function alpha -> <slope, alpha> + constant.
struct AffinePiece {
  Vec slope;
  Rational constant;

  Rational eval(const Vec& alpha) const { return dot(slope, alpha) + constant; }
  bool operator==(const AffinePiece& o) const { return slope == o.slope && constant == o.constant; }
};

bool piece_less(const AffinePiece& a, const AffinePiece& b);

/// Bounded concave piecewise-linear function on a rational polytope, in
/// min-of-affine form. Construction removes every piece whose active cell
/// is lower-dimensional, so the surviving pieces have pairwise distinct
/// slopes and their cells partition the domain up to measure zero.
class ConcavePLFunction {
 public:
  ConcavePLFunction(RationalPolytope domain, std::vector<AffinePiece> pieces);

  const RationalPolytope& domain() const { return domain_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  /// Active cell of pieces()[j].
  const std::vector<RationalPolytope>& cells() const { return cells_; }

  Rational eval(const Vec& alpha) const;

  /// Union of vertices of all active cells, lex-sorted.
  std::vector<Vec> subdivision_vertices() const;

  ConcavePLFunction min_with(const ConcavePLFunction& other) const;
  ConcavePLFunction shift(const Rational& c) const;
  ConcavePLFunction scale(const Rational& t) const;  // t > 0

  Rational max_value() const;  // max over the domain
  Rational min_value() const;

  bool operator==(const ConcavePLFunction& o) const {
    return domain_ == o.domain_ && pieces_ == o.pieces_;
  }

 private:
  RationalPolytope domain_;
  std::vector<AffinePiece> pieces_;
  std::vector<RationalPolytope> cells_;
};

/// Convex piecewise-linear function on all of Q^n in max-of-affine form;
/// the piece list keeps exactly the pieces that win on some open set.
class ConvexPLFunction {
 public:
  ConvexPLFunction(int dim, std::vector<AffinePiece> pieces);

  int dim() const { return dim_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  Rational eval(const Vec& xi) const;

  bool operator==(const ConvexPLFunction& o) const { return dim_ == o.dim_ && pieces_ == o.pieces_; }

 private:
  int dim_;
  std::vector<AffinePiece> pieces_;
};

/// Legendre transform g^(xi) = sup_P {<alpha, xi> + g(alpha)}: one piece
/// (v, g(v)) per subdivision vertex v, reduced to the essential ones.
ConvexPLFunction legendre_transform(const ConcavePLFunction& g);

/// Least concave majorant of finitely many samples (alpha_k, y_k); the
/// carrier is the convex hull of the alphas. Duplicate alphas keep their
/// largest value. Parallel facet scan; serial reference in tnc::reference.
ConcavePLFunction concave_envelope(std::vector<std::pair<Vec, Rational>> samples);

/// Concave envelope of a PL function's own vertex samples (the concave
/// closure); equals the input for every well-formed ConcavePLFunction.
ConcavePLFunction biconjugate(const ConcavePLFunction& g);

/// Exact integral of g over its domain (plain Lebesgue measure).
Rational integrate(const ConcavePLFunction& g);
/// Integral against the normalized measure of the domain.
Rational integrate_normalized(const ConcavePLFunction& g);

/// Common refinement of the active cells of g and h over a shared domain,
/// with the affine difference g - h on each refined cell.
std::vector<std::pair<RationalPolytope, AffinePiece>> refine_difference(
    const ConcavePLFunction& g, const ConcavePLFunction& h);

/// Exact integral of |g - h|^p against the normalized measure, integer p >= 1.
Rational lp_distance_pow(const ConcavePLFunction& g, const ConcavePLFunction& h, unsigned p);

/// Exact sup of |g - h| over the domain.
Rational sup_distance(const ConcavePLFunction& g, const ConcavePLFunction& h);

/// Exact integral of ell^p over a polytope (affine ell, integer p >= 0).
Rational integrate_affine_pow(const RationalPolytope& cell, const AffinePiece& ell, unsigned p);

namespace reference {
ConcavePLFunction concave_envelope(std::vector<std::pair<Vec, Rational>> samples);
}

}  // namespace tnc

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

/// Closed halfspace {x : normal . x <= offset}, stored in primitive
/// integer form (a unique positive scaling).
struct Halfspace {
  Vec normal;
  Rational offset;

  Rational slack(const Vec& x) const { return offset - dot(normal, x); }
  bool contains(const Vec& x) const { return slack(x) >= 0; }

  /// Rescales (normal, offset) to the canonical primitive integer form.
  void canonicalize();
  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
};

/// Full-dimensional rational polytope in dimension 1..3, kept in both
/// vertex and facet form, with a deterministic fan triangulation from the
/// lexicographically smallest vertex.
class RationalPolytope {
 public:
  /// Builds the convex hull of a point set. Throws InvalidArgument when
  /// the hull is not full-dimensional.
  static RationalPolytope from_points(int dim, std::vector<Vec> points);

  /// Vertex enumeration of an intersection of halfspaces; nullopt when
  /// the intersection is empty or lower-dimensional.
  static std::optional<RationalPolytope> from_halfspaces(int dim, const std::vector<Halfspace>& hs);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  /// Simplices of the canonical triangulation, as vertex index tuples.
  const std::vector<std::vector<int>>& triangulation() const { return simplices_; }

  const Rational& volume() const { return volume_; }
  const Vec& barycenter() const { return barycenter_; }

  bool contains(const Vec& p) const;

  /// All integer points of the dilate m*P, in ascending lexicographic
  /// order. Parallel kernel; bitwise identical to the serial reference.
  std::vector<Vec> lattice_points(long m) const;

  /// Intersection with additional halfspaces; nullopt when the result
  /// has measure zero.
  std::optional<RationalPolytope> clip(const std::vector<Halfspace>& extra) const;

  /// min and max of <xi, .> over the polytope.
  Rational support_min(const Vec& xi) const;
  Rational support_max(const Vec& xi) const;

  bool operator==(const RationalPolytope& o) const {
    return dim_ == o.dim_ && vertices_ == o.vertices_;
  }

 private:
  RationalPolytope() = default;
  void finalize();  // facets, vertices filter, triangulation, volume

  int dim_ = 0;
  std::vector<Vec> vertices_;            // lex-sorted
  std::vector<Halfspace> facets_;        // canonical, sorted
  std::vector<std::vector<int>> simplices_;
  Rational volume_;
  Vec barycenter_;
};

namespace reference {
/// Serial reference for the lattice-point kernel, kept for tests and the
/// kernel benchmark.
std::vector<Vec> lattice_points(const RationalPolytope& p, long m);
}  // namespace reference

/// Exact volume of a simplex given by dim+1 points.
Rational simplex_volume(int dim, const std::vector<Vec>& pts);

}  // namespace tnc

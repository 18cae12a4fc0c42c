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
#include "tnc/polytope.hpp"

#include "tnc/linalg.hpp"

#include <algorithm>
#include <map>

namespace tnc {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > 3) throw InvalidArgument("polytope dimension must be 1, 2 or 3");
}

std::vector<Vec> dedup_sorted(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

// Iterates over all k-subsets of {0..n-1} in lexicographic order.
bool next_subset(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Orders the vertices of a convex polygon counterclockwise around their
// centroid, using exact orientation predicates only.
std::vector<Vec> order_polygon(std::vector<Vec> pts) {
  Vec c(2, Rational(0));
  for (const Vec& p : pts) { c[0] += p[0]; c[1] += p[1]; }
  c[0] /= static_cast<int>(pts.size());
  c[1] /= static_cast<int>(pts.size());
  auto half = [&](const Vec& p) {
    Rational dx = p[0] - c[0], dy = p[1] - c[1];
    return (dx > 0 || (dx == 0 && dy > 0)) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rational cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
    return cross > 0;
  });
  return pts;
}

}  // namespace

void Halfspace::canonicalize() {
  // Scale to integer entries with overall gcd 1 (positive scale only).
  BigInt den_lcm(1);
  for (const Rational& x : normal) {
    BigInt d = denominator(x);
    den_lcm = lcm(den_lcm, d);
  }
  den_lcm = lcm(den_lcm, BigInt(denominator(offset)));
  Rational s(den_lcm, 1);
  BigInt g(0);
  for (Rational& x : normal) { x *= s; g = gcd(g, BigInt(numerator(x))); }
  offset *= s;
  g = gcd(g, BigInt(numerator(offset)));
  if (g > 1) {
    Rational inv(1, g);
    for (Rational& x : normal) x *= inv;
    offset *= inv;
  }
}

RationalPolytope RationalPolytope::from_points(int dim, std::vector<Vec> points) {
  check_dim(dim);
  for (const Vec& p : points)
    if (static_cast<int>(p.size()) != dim) throw InvalidArgument("from_points: point dimension mismatch");
  RationalPolytope poly;
  poly.dim_ = dim;
  poly.vertices_ = dedup_sorted(std::move(points));
  if (affine_rank(poly.vertices_, dim) != dim)
    throw InvalidArgument("from_points: point set is not full-dimensional");
  poly.finalize();
  return poly;
}

void RationalPolytope::finalize() {
  const int n = dim_;
  const std::vector<Vec>& pts = vertices_;
  const int count = static_cast<int>(pts.size());

  // Candidate facet hyperplanes through every n-subset of the points.
  std::vector<Halfspace> facets;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  do {
    // Normal = kernel of the (n-1) x n difference matrix.
    QMatrix diffs(n - 1 > 0 ? n - 1 : 1, n);
    if (n == 1) {
      // A 0-dimensional "hyperplane" is the point itself: normal (1).
      Halfspace h{Vec{Rational(1)}, pts[idx[0]][0]};
      bool below = false, above = false;
      for (const Vec& p : pts) {
        Rational s = h.slack(p);
        if (s > 0) below = true;
        if (s < 0) above = true;
      }
      if (below && above) continue;
      if (above) { h.normal[0] = -1; h.offset = -h.offset; }
      h.canonicalize();
      facets.push_back(h);
      continue;
    }
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < n; ++c) diffs.at(r - 1, c) = pts[idx[r]][c] - pts[idx[0]][c];
    auto kernel = diffs.kernel_basis();
    if (kernel.size() != 1) continue;  // affinely dependent subset
    Halfspace h{kernel[0], dot(kernel[0], pts[idx[0]])};
    bool below = false, above = false;
    for (const Vec& p : pts) {
      Rational s = h.slack(p);
      if (s > 0) below = true;
      if (s < 0) above = true;
      if (below && above) break;
    }
    if (below && above) continue;  // not supporting
    if (above) {
      for (Rational& x : h.normal) x = -x;
      h.offset = -h.offset;
    }
    h.canonicalize();
    facets.push_back(h);
  } while (next_subset(idx, count));

  std::sort(facets.begin(), facets.end(), halfspace_less);
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  facets_ = std::move(facets);

  // A point is a vertex iff its tight facet normals span the space.
  std::vector<Vec> verts;
  for (const Vec& p : pts) {
    RankExtender ext(n);
    for (const Halfspace& h : facets_)
      if (h.slack(p) == 0) ext.try_add(h.normal);
    if (ext.rank() == n) verts.push_back(p);
  }
  vertices_ = std::move(verts);

  // Fan triangulation from the lexicographically smallest vertex, facet
  // by facet (facets incident to the apex span no volume and are skipped).
  simplices_.clear();
  const Vec& apex = vertices_.front();
  for (const Halfspace& h : facets_) {
    if (h.slack(apex) == 0) continue;
    std::vector<int> on_facet;
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
      if (h.slack(vertices_[i]) == 0) on_facet.push_back(i);
    if (n == 1) {
      simplices_.push_back({0, on_facet[0]});
    } else if (n == 2) {
      // Facet is an edge with exactly two vertices.
      simplices_.push_back({0, on_facet[0], on_facet[1]});
    } else {
      // Order the facet polygon, then fan from its lex-smallest vertex.
      int drop_axis = 0;
      for (int a = 0; a < 3; ++a)
        if (h.normal[a] != 0) { drop_axis = a; break; }
      std::map<Vec, int> back;
      std::vector<Vec> flat;
      for (int vi : on_facet) {
        Vec q;
        for (int a = 0; a < 3; ++a)
          if (a != drop_axis) q.push_back(vertices_[vi][a]);
        back[q] = vi;
        flat.push_back(q);
      }
      std::vector<Vec> cycle = order_polygon(std::move(flat));
      int start = 0;
      for (int i = 1; i < static_cast<int>(cycle.size()); ++i)
        if (lex_less(cycle[i], cycle[start])) start = i;
      std::rotate(cycle.begin(), cycle.begin() + start, cycle.end());
      for (int i = 1; i + 1 < static_cast<int>(cycle.size()); ++i)
        simplices_.push_back({0, back[cycle[0]], back[cycle[i]], back[cycle[i + 1]]});
    }
  }

  volume_ = 0;
  barycenter_ = Vec(n, Rational(0));
  for (const auto& s : simplices_) {
    std::vector<Vec> sp;
    for (int i : s) sp.push_back(vertices_[i]);
    Rational v = simplex_volume(n, sp);
    volume_ += v;
    for (int a = 0; a < n; ++a) {
      Rational coord(0);
      for (const Vec& q : sp) coord += q[a];
      barycenter_[a] += v * coord / (n + 1);
    }
  }
  if (volume_ <= 0) throw InvalidArgument("polytope has zero volume");
  for (int a = 0; a < n; ++a) barycenter_[a] /= volume_;
}

std::optional<RationalPolytope> RationalPolytope::from_halfspaces(int dim, const std::vector<Halfspace>& hs) {
  check_dim(dim);
  const int m = static_cast<int>(hs.size());
  if (m < dim + 1) return std::nullopt;
  std::vector<Vec> points;
  std::vector<int> idx(dim);
  for (int i = 0; i < dim; ++i) idx[i] = i;
  do {
    QMatrix a(dim, dim);
    Vec b(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) a.at(r, c) = hs[idx[r]].normal[c];
      b[r] = hs[idx[r]].offset;
    }
    auto x = a.solve(b);
    if (!x) continue;
    bool inside = true;
    for (const Halfspace& h : hs)
      if (!h.contains(*x)) { inside = false; break; }
    if (inside) points.push_back(std::move(*x));
  } while (next_subset(idx, m));
  points = dedup_sorted(std::move(points));
  if (points.empty() || affine_rank(points, dim) != dim) return std::nullopt;
  RationalPolytope poly;
  poly.dim_ = dim;
  poly.vertices_ = std::move(points);
  poly.finalize();
  return poly;
}

bool RationalPolytope::contains(const Vec& p) const {
  if (static_cast<int>(p.size()) != dim_) throw InvalidArgument("contains: dimension mismatch");
  for (const Halfspace& h : facets_)
    if (!h.contains(p)) return false;
  return true;
}

std::optional<RationalPolytope> RationalPolytope::clip(const std::vector<Halfspace>& extra) const {
  std::vector<Halfspace> all = facets_;
  for (Halfspace h : extra) {
    h.canonicalize();
    all.push_back(std::move(h));
  }
  std::sort(all.begin(), all.end(), halfspace_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return from_halfspaces(dim_, all);
}

Rational RationalPolytope::support_min(const Vec& xi) const {
  Rational best = dot(xi, vertices_[0]);
  for (const Vec& v : vertices_) best = std::min(best, dot(xi, v));
  return best;
}

Rational RationalPolytope::support_max(const Vec& xi) const {
  Rational best = dot(xi, vertices_[0]);
  for (const Vec& v : vertices_) best = std::max(best, dot(xi, v));
  return best;
}

namespace {

struct LatticeBox {
  std::vector<long> lo, hi;
};

LatticeBox lattice_box(const RationalPolytope& p, long m) {
  LatticeBox box;
  int n = p.dim();
  box.lo.resize(n);
  box.hi.resize(n);
  for (int a = 0; a < n; ++a) {
    Rational mn = p.vertices()[0][a], mx = mn;
    for (const Vec& v : p.vertices()) {
      mn = std::min(mn, v[a]);
      mx = std::max(mx, v[a]);
    }
    box.lo[a] = static_cast<long>(ceil_rational(mn * m));
    box.hi[a] = static_cast<long>(floor_rational(mx * m));
  }
  return box;
}

bool in_dilate(const RationalPolytope& p, long m, const Vec& alpha) {
  for (const Halfspace& h : p.facets())
    if (dot(h.normal, alpha) > h.offset * m) return false;
  return true;
}

std::vector<Vec> lattice_slice(const RationalPolytope& p, long m, const LatticeBox& box, long x0) {
  std::vector<Vec> out;
  const int n = p.dim();
  if (n == 1) {
    Vec alpha{Rational(x0)};
    if (in_dilate(p, m, alpha)) out.push_back(std::move(alpha));
    return out;
  }
  for (long x1 = box.lo[1]; x1 <= box.hi[1]; ++x1) {
    if (n == 2) {
      Vec alpha{Rational(x0), Rational(x1)};
      if (in_dilate(p, m, alpha)) out.push_back(std::move(alpha));
    } else {
      for (long x2 = box.lo[2]; x2 <= box.hi[2]; ++x2) {
        Vec alpha{Rational(x0), Rational(x1), Rational(x2)};
        if (in_dilate(p, m, alpha)) out.push_back(std::move(alpha));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Vec> RationalPolytope::lattice_points(long m) const {
  if (m < 1) throw InvalidArgument("lattice_points: m must be >= 1");
  LatticeBox box = lattice_box(*this, m);
  const long n_slices = box.hi[0] - box.lo[0] + 1;
  if (n_slices <= 0) return {};
  std::vector<std::vector<Vec>> slices(static_cast<std::size_t>(n_slices));
#ifdef TNC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long s = 0; s < n_slices; ++s)
    slices[static_cast<std::size_t>(s)] = lattice_slice(*this, m, box, box.lo[0] + s);
  std::vector<Vec> out;
  for (auto& sl : slices)
    for (Vec& v : sl) out.push_back(std::move(v));
  return out;
}

namespace reference {

std::vector<Vec> lattice_points(const RationalPolytope& p, long m) {
  if (m < 1) throw InvalidArgument("lattice_points: m must be >= 1");
  LatticeBox box = lattice_box(p, m);
  std::vector<Vec> out;
  for (long x0 = box.lo[0]; x0 <= box.hi[0]; ++x0) {
    auto sl = lattice_slice(p, m, box, x0);
    for (Vec& v : sl) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace reference

Rational simplex_volume(int dim, const std::vector<Vec>& pts) {
  if (static_cast<int>(pts.size()) != dim + 1) throw InvalidArgument("simplex_volume: needs dim+1 points");
  QMatrix m(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) m.at(r, c) = pts[c + 1][r] - pts[0][r];
  Rational det = m.determinant();
  if (det < 0) det = -det;
  BigInt fact(1);
  for (int i = 2; i <= dim; ++i) fact *= i;
  return det / Rational(fact, 1);
}

}  // namespace tnc

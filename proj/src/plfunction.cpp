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
#include "tnc/plfunction.hpp"

#include "tnc/linalg.hpp"
#include "tnc/lp.hpp"

#include <algorithm>
#include <map>

namespace tnc {

bool piece_less(const AffinePiece& a, const AffinePiece& b) {
  if (a.slope != b.slope) return lex_less(b.slope, a.slope);  // descending slopes
  return a.constant > b.constant;
}

namespace {

// Keeps one piece per slope (the one with the smallest constant wins in a
// min-form), sorted in the canonical descending order.
std::vector<AffinePiece> prefilter_min_form(std::vector<AffinePiece> pieces) {
  std::map<Vec, Rational, bool (*)(const Vec&, const Vec&)> best(lex_less);
  for (AffinePiece& p : pieces) {
    auto it = best.find(p.slope);
    if (it == best.end())
      best.emplace(std::move(p.slope), std::move(p.constant));
    else if (p.constant < it->second)
      it->second = p.constant;
  }
  std::vector<AffinePiece> out;
  out.reserve(best.size());
  for (auto& [s, c] : best) out.push_back(AffinePiece{s, c});
  std::sort(out.begin(), out.end(), piece_less);
  return out;
}

}  // namespace

ConcavePLFunction::ConcavePLFunction(RationalPolytope domain, std::vector<AffinePiece> pieces)
    : domain_(std::move(domain)) {
  if (pieces.empty()) throw InvalidArgument("ConcavePLFunction: empty piece list");
  for (const AffinePiece& p : pieces)
    if (static_cast<int>(p.slope.size()) != domain_.dim())
      throw InvalidArgument("ConcavePLFunction: piece dimension mismatch");
  std::vector<AffinePiece> cand = prefilter_min_form(std::move(pieces));

  for (std::size_t j = 0; j < cand.size(); ++j) {
    std::vector<Halfspace> dominance;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (k == j) continue;
      // piece j active: <s_j - s_k, a> <= c_k - c_j
      dominance.push_back(Halfspace{sub(cand[j].slope, cand[k].slope), cand[k].constant - cand[j].constant});
    }
    auto cell = domain_.clip(dominance);
    if (cell) {
      pieces_.push_back(cand[j]);
      cells_.push_back(std::move(*cell));
    }
  }
  if (pieces_.empty())
    throw InvalidArgument("ConcavePLFunction: no piece is active on a full-dimensional cell");
}

Rational ConcavePLFunction::eval(const Vec& alpha) const {
  Rational v = pieces_[0].eval(alpha);
  for (std::size_t j = 1; j < pieces_.size(); ++j) v = std::min(v, pieces_[j].eval(alpha));
  return v;
}

std::vector<Vec> ConcavePLFunction::subdivision_vertices() const {
  std::vector<Vec> out;
  for (const RationalPolytope& c : cells_)
    for (const Vec& v : c.vertices()) out.push_back(v);
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConcavePLFunction ConcavePLFunction::min_with(const ConcavePLFunction& other) const {
  if (!(domain_ == other.domain_)) throw InvalidArgument("min_with: domains differ");
  std::vector<AffinePiece> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return ConcavePLFunction(domain_, std::move(all));
}

ConcavePLFunction ConcavePLFunction::shift(const Rational& c) const {
  std::vector<AffinePiece> ps = pieces_;
  for (AffinePiece& p : ps) p.constant += c;
  return ConcavePLFunction(domain_, std::move(ps));
}

ConcavePLFunction ConcavePLFunction::scale(const Rational& t) const {
  if (t <= 0) throw InvalidArgument("scale: factor must be positive");
  std::vector<AffinePiece> ps = pieces_;
  for (AffinePiece& p : ps) {
    p.slope = tnc::scale(p.slope, t);
    p.constant *= t;
  }
  return ConcavePLFunction(domain_, std::move(ps));
}

Rational ConcavePLFunction::max_value() const {
  auto verts = subdivision_vertices();
  Rational best = eval(verts[0]);
  for (const Vec& v : verts) best = std::max(best, eval(v));
  return best;
}

Rational ConcavePLFunction::min_value() const {
  auto verts = subdivision_vertices();
  Rational best = eval(verts[0]);
  for (const Vec& v : verts) best = std::min(best, eval(v));
  return best;
}

ConvexPLFunction::ConvexPLFunction(int dim, std::vector<AffinePiece> pieces) : dim_(dim) {
  if (pieces.empty()) throw InvalidArgument("ConvexPLFunction: empty piece list");
  for (const AffinePiece& p : pieces)
    if (static_cast<int>(p.slope.size()) != dim) throw InvalidArgument("ConvexPLFunction: piece dimension mismatch");
  std::sort(pieces.begin(), pieces.end(), piece_less);
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  // In max-of-affine form, a piece contributes on an open set iff its
  // lifted point (slope, constant) is a vertex of the upper hull of them all.
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::vector<Vec> others;
    std::vector<Rational> values;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j == k) continue;
      others.push_back(pieces[j].slope);
      values.push_back(pieces[j].constant);
    }
    if (others.empty() || !below_upper_hull(pieces[k].slope, pieces[k].constant, others, values))
      pieces_.push_back(pieces[k]);
  }
}

Rational ConvexPLFunction::eval(const Vec& xi) const {
  Rational v = pieces_[0].eval(xi);
  for (std::size_t j = 1; j < pieces_.size(); ++j) v = std::max(v, pieces_[j].eval(xi));
  return v;
}

ConvexPLFunction legendre_transform(const ConcavePLFunction& g) {
  std::vector<AffinePiece> pieces;
  for (const Vec& v : g.subdivision_vertices())
    pieces.push_back(AffinePiece{v, g.eval(v)});
  return ConvexPLFunction(g.domain().dim(), std::move(pieces));
}

namespace {

struct SampleSet {
  int dim;
  std::vector<Vec> alphas;
  std::vector<Rational> values;
};

SampleSet prepare_samples(std::vector<std::pair<Vec, Rational>> samples) {
  if (samples.empty()) throw InvalidArgument("concave_envelope: no samples");
  SampleSet s;
  s.dim = static_cast<int>(samples[0].first.size());
  std::map<Vec, Rational, bool (*)(const Vec&, const Vec&)> best(lex_less);
  for (auto& [a, y] : samples) {
    if (static_cast<int>(a.size()) != s.dim) throw InvalidArgument("concave_envelope: ragged samples");
    auto it = best.find(a);
    if (it == best.end())
      best.emplace(std::move(a), std::move(y));
    else if (y > it->second)
      it->second = y;
  }
  for (auto& [a, y] : best) {
    s.alphas.push_back(a);
    s.values.push_back(y);
  }
  if (affine_rank(s.alphas, s.dim) != s.dim)
    throw InvalidArgument("concave_envelope: samples are not full-dimensional");
  return s;
}

// The affine interpolant through dim+1 lifted samples, if they are
// affinely independent in the base space.
std::optional<AffinePiece> interpolant(const SampleSet& s, const std::vector<int>& idx) {
  const int n = s.dim;
  QMatrix m(n + 1, n + 1);
  Vec b(n + 1);
  for (int r = 0; r <= n; ++r) {
    for (int c = 0; c < n; ++c) m.at(r, c) = s.alphas[idx[r]][c];
    m.at(r, n) = 1;
    b[r] = s.values[idx[r]];
  }
  auto x = m.solve(b);
  if (!x) return std::nullopt;
  AffinePiece p;
  p.slope.assign(x->begin(), x->begin() + n);
  p.constant = (*x)[n];
  return p;
}

bool majorizes_all(const AffinePiece& p, const SampleSet& s) {
  for (std::size_t k = 0; k < s.alphas.size(); ++k)
    if (p.eval(s.alphas[k]) < s.values[k]) return false;
  return true;
}

// Affine hyperplane containing every lifted sample, when one exists.
std::optional<AffinePiece> flat_interpolant(const SampleSet& s) {
  std::vector<int> idx;
  RankExtender ext(s.dim);
  idx.push_back(0);
  for (std::size_t k = 1; k < s.alphas.size() && ext.rank() < s.dim; ++k)
    if (ext.try_add(sub(s.alphas[k], s.alphas[0]))) idx.push_back(static_cast<int>(k));
  auto p = interpolant(s, idx);
  if (!p) return std::nullopt;
  for (std::size_t k = 0; k < s.alphas.size(); ++k)
    if (p->eval(s.alphas[k]) != s.values[k]) return std::nullopt;
  return p;
}

// All subsets of size n+1 as flattened index lists, for the parallel scan.
std::vector<std::vector<int>> all_subsets(int count, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int k = size;
    int i = k - 1;
    for (; i >= 0; --i) {
      if (idx[i] < count - (k - i)) {
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
    }
    if (i < 0) break;
  }
  return out;
}

ConcavePLFunction envelope_from_pieces(const SampleSet& s, std::vector<AffinePiece> kept) {
  std::sort(kept.begin(), kept.end(), piece_less);
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  RationalPolytope carrier = RationalPolytope::from_points(s.dim, s.alphas);
  return ConcavePLFunction(std::move(carrier), std::move(kept));
}

}  // namespace

ConcavePLFunction concave_envelope(std::vector<std::pair<Vec, Rational>> samples) {
  SampleSet s = prepare_samples(std::move(samples));
  if (auto flat = flat_interpolant(s))
    return envelope_from_pieces(s, {*flat});
  auto subsets = all_subsets(static_cast<int>(s.alphas.size()), s.dim + 1);
  const std::size_t total = subsets.size();
  std::vector<char> keep(total, 0);
  std::vector<AffinePiece> planes(total);
#ifdef TNC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::size_t t = 0; t < total; ++t) {
    auto p = interpolant(s, subsets[t]);
    if (p && majorizes_all(*p, s)) {
      planes[t] = std::move(*p);
      keep[t] = 1;
    }
  }
  std::vector<AffinePiece> kept;
  for (std::size_t t = 0; t < total; ++t)
    if (keep[t]) kept.push_back(std::move(planes[t]));
  return envelope_from_pieces(s, std::move(kept));
}

namespace reference {

ConcavePLFunction concave_envelope(std::vector<std::pair<Vec, Rational>> samples) {
  SampleSet s = prepare_samples(std::move(samples));
  if (auto flat = flat_interpolant(s))
    return envelope_from_pieces(s, {*flat});
  std::vector<AffinePiece> kept;
  for (const auto& idx : all_subsets(static_cast<int>(s.alphas.size()), s.dim + 1)) {
    auto p = interpolant(s, idx);
    if (p && majorizes_all(*p, s)) kept.push_back(std::move(*p));
  }
  return envelope_from_pieces(s, std::move(kept));
}

}  // namespace reference

ConcavePLFunction biconjugate(const ConcavePLFunction& g) {
  std::vector<std::pair<Vec, Rational>> samples;
  for (const Vec& v : g.subdivision_vertices()) samples.emplace_back(v, g.eval(v));
  return concave_envelope(std::move(samples));
}

Rational integrate(const ConcavePLFunction& g) {
  Rational total(0);
  for (std::size_t j = 0; j < g.pieces().size(); ++j)
    total += integrate_affine_pow(g.cells()[j], g.pieces()[j], 1);
  return total;
}

Rational integrate_normalized(const ConcavePLFunction& g) {
  return integrate(g) / g.domain().volume();
}

std::vector<std::pair<RationalPolytope, AffinePiece>> refine_difference(
    const ConcavePLFunction& g, const ConcavePLFunction& h) {
  if (!(g.domain() == h.domain())) throw InvalidArgument("refine_difference: domains differ");
  std::vector<std::pair<RationalPolytope, AffinePiece>> out;
  for (std::size_t i = 0; i < g.pieces().size(); ++i) {
    for (std::size_t j = 0; j < h.pieces().size(); ++j) {
      auto cell = g.cells()[i].clip(h.cells()[j].facets());
      if (!cell) continue;
      AffinePiece diff{sub(g.pieces()[i].slope, h.pieces()[j].slope),
                       g.pieces()[i].constant - h.pieces()[j].constant};
      out.emplace_back(std::move(*cell), std::move(diff));
    }
  }
  return out;
}

Rational lp_distance_pow(const ConcavePLFunction& g, const ConcavePLFunction& h, unsigned p) {
  if (p < 1) throw InvalidArgument("lp_distance_pow: p must be >= 1");
  Rational total(0);
  for (const auto& [cell, diff] : refine_difference(g, h)) {
    // Split the cell by the sign of the affine difference.
    Halfspace nonneg{scale(diff.slope, Rational(-1)), diff.constant};
    Halfspace nonpos{diff.slope, -diff.constant};
    if (auto pos = cell.clip({nonneg}))
      total += integrate_affine_pow(*pos, diff, p);
    if (auto neg = cell.clip({nonpos})) {
      AffinePiece m{scale(diff.slope, Rational(-1)), -diff.constant};
      total += integrate_affine_pow(*neg, m, p);
    }
  }
  return total / g.domain().volume();
}

Rational sup_distance(const ConcavePLFunction& g, const ConcavePLFunction& h) {
  Rational best(0);
  for (const auto& [cell, diff] : refine_difference(g, h)) {
    for (const Vec& v : cell.vertices()) {
      Rational x = diff.eval(v);
      if (x < 0) x = -x;
      best = std::max(best, x);
    }
  }
  return best;
}

Rational integrate_affine_pow(const RationalPolytope& cell, const AffinePiece& ell, unsigned p) {
  // Over a simplex, the integral of an affine function to the p-th power
  // is vol * h_p(vertex values) / C(n+p, p), with h_p the complete
  // homogeneous symmetric polynomial.
  const int n = cell.dim();
  Rational total(0);
  for (const auto& simplex : cell.triangulation()) {
    std::vector<Vec> pts;
    for (int i : simplex) pts.push_back(cell.vertices()[i]);
    Rational vol = simplex_volume(n, pts);
    if (vol == 0) continue;
    std::vector<Rational> h(p + 1, Rational(0));
    h[0] = 1;
    for (const Vec& q : pts) {
      Rational val = ell.eval(q);
      for (unsigned d = 1; d <= p; ++d) h[d] += val * h[d - 1];
    }
    total += vol * h[p] / Rational(binomial(static_cast<unsigned>(n) + p, p), 1);
  }
  return total;
}

}  // namespace tnc

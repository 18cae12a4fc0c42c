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
#include "tnc/toricnorm.hpp"

#include <algorithm>
#include <map>

namespace tnc {

// ---------------------------------------------------------------------
// A tiny exact engine for continuous piecewise-linear functions on an
// interval: sorted breakpoints with values, linear in between. Used for
// the rigorous enclosures of sampled-mode quantities.
namespace {

struct PL1D {
  std::vector<Rational> xs;  // strictly increasing, covers [front, back]
  std::vector<Rational> ys;

  Rational eval(const Rational& x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t k = 0;
    while (k + 2 < xs.size() && xs[k + 1] <= x) ++k;
    Rational t = (x - xs[k]) / (xs[k + 1] - xs[k]);
    return ys[k] + t * (ys[k + 1] - ys[k]);
  }

  Rational integrate() const {
    Rational s(0);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k)
      s += (xs[k + 1] - xs[k]) * (ys[k] + ys[k + 1]) / 2;
    return s;
  }

  Rational max_value() const {
    Rational m = ys.front();
    for (const Rational& y : ys) m = std::max(m, y);
    return m;
  }
};

PL1D combine(const PL1D& f, const PL1D& g, bool take_max_else_diff, bool diff_abs_lower) {
  // Merged breakpoints plus sign-change crossings of f - g.
  std::vector<Rational> xs = f.xs;
  xs.insert(xs.end(), g.xs.begin(), g.xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rational> crossings;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    Rational a = f.eval(xs[k]) - g.eval(xs[k]);
    Rational b = f.eval(xs[k + 1]) - g.eval(xs[k + 1]);
    if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
      Rational t = a / (a - b);
      crossings.push_back(xs[k] + t * (xs[k + 1] - xs[k]));
    }
  }
  xs.insert(xs.end(), crossings.begin(), crossings.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  PL1D out;
  out.xs = xs;
  for (const Rational& x : xs) {
    Rational fv = f.eval(x), gv = g.eval(x);
    if (take_max_else_diff)
      out.ys.push_back(std::max(fv, gv));
    else if (diff_abs_lower)
      out.ys.push_back(std::max(Rational(0), Rational(fv - gv)));
    else
      out.ys.push_back(fv - gv);
  }
  return out;
}

PL1D pl_max(const PL1D& f, const PL1D& g) { return combine(f, g, true, false); }
PL1D pl_sub(const PL1D& f, const PL1D& g) { return combine(f, g, false, false); }
PL1D pl_pos_part(const PL1D& f) {
  PL1D zero{{f.xs.front(), f.xs.back()}, {Rational(0), Rational(0)}};
  return pl_max(f, zero);
}

}  // namespace

// ---------------------------------------------------------------------
// SampledConcave

SampledConcave::SampledConcave(Rational lo, Rational hi, std::vector<Rational> values)
    : lo_(std::move(lo)), hi_(std::move(hi)), values_(std::move(values)) {
  if (values_.size() < 3) throw InvalidArgument("SampledConcave: need at least 3 samples");
  if (!(lo_ < hi_)) throw InvalidArgument("SampledConcave: empty interval");
  pitch_ = (hi_ - lo_) / static_cast<long>(values_.size() - 1);

  const long k = static_cast<long>(values_.size());
  bool ok = true;
#ifdef TNC_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(&& : ok)
#endif
  for (long i = 0; i < k; ++i) {
    bool local = true;
    for (long j = i + 2; j < k; j += 2) {
      if (2 * values_[(i + j) / 2] < values_[i] + values_[j]) {
        local = false;
        break;
      }
    }
    ok = ok && local;
  }
  if (!ok) throw InvalidArgument("SampledConcave: midpoint concavity fails on the grid");
}

std::optional<Rational> SampledConcave::value_at(const Rational& alpha) const {
  Rational idx = (alpha - lo_) / pitch_;
  if (denominator(idx) != 1) return std::nullopt;
  BigInt k = numerator(idx);
  if (k < 0 || k >= static_cast<long>(values_.size())) return std::nullopt;
  return values_[k.convert_to<std::size_t>()];
}

namespace {

// Upper envelope of a concave function from its grid samples: on each
// grid cell, the minimum of the slope extensions from the neighbouring
// cells. Exact and rigorous; the gap to the chord is O(pitch).
PL1D sampled_upper_bound(const SampledConcave& g) {
  const std::size_t k = g.grid_size();
  auto x = [&](std::size_t i) { return g.grid_point(i); };
  const auto& v = g.values();
  Rational pitch = g.pitch();
  PL1D out;
  auto push = [&](const Rational& px, const Rational& py) {
    if (!out.xs.empty() && out.xs.back() == px) return;
    out.xs.push_back(px);
    out.ys.push_back(py);
  };
  for (std::size_t c = 0; c + 1 < k; ++c) {
    bool has_a = c >= 1;
    bool has_b = c + 2 < k;
    // A: extension of the previous cell's slope beyond x_c.
    Rational sa = has_a ? (v[c] - v[c - 1]) / pitch : Rational(0);
    // B: extension of the next cell's slope backwards from x_{c+1}.
    Rational sb = has_b ? (v[c + 2] - v[c + 1]) / pitch : Rational(0);
    if (has_a && has_b) {
      Rational a0 = v[c], b1 = v[c + 1];
      // A(t) = a0 + sa (t - x_c); B(t) = b1 + sb (t - x_{c+1}).
      if (sa == sb) {
        Rational b_at_left = b1 - sb * pitch;
        if (a0 <= b_at_left) {
          push(x(c), a0);
          push(x(c + 1), a0 + sa * pitch);
        } else {
          push(x(c), b_at_left);
          push(x(c + 1), b1);
        }
      } else {
        Rational cross = x(c) + (b1 - sb * pitch - a0) / (sa - sb);
        push(x(c), a0);
        if (cross > x(c) && cross < x(c + 1)) push(cross, a0 + sa * (cross - x(c)));
        push(x(c + 1), b1);
      }
    } else if (has_b) {
      push(x(c), v[c + 1] - sb * pitch);
      push(x(c + 1), v[c + 1]);
    } else {
      push(x(c), v[c]);
      push(x(c + 1), v[c] + sa * pitch);
    }
  }
  return out;
}

PL1D sampled_lower_bound(const SampledConcave& g) {
  PL1D out;
  for (std::size_t i = 0; i < g.grid_size(); ++i) {
    out.xs.push_back(g.grid_point(i));
    out.ys.push_back(g.values()[i]);
  }
  return out;
}

}  // namespace

IntervalQ SampledConcave::integral_bounds() const {
  return IntervalQ{sampled_lower_bound(*this).integrate(), sampled_upper_bound(*this).integrate()};
}

IntervalQ SampledConcave::sup_bounds() const {
  return IntervalQ{sampled_lower_bound(*this).max_value(), sampled_upper_bound(*this).max_value()};
}

IntervalQ SampledConcave::conjugate_bounds(const Rational& xi) const {
  std::vector<Rational> shifted = values_;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= xi * grid_point(i);
  SampledConcave s(lo_, hi_, std::move(shifted));
  return s.sup_bounds();
}

// ---------------------------------------------------------------------
// ToricHomNorm

ToricHomNorm::ToricHomNorm(RationalPolytope polytope, ConcavePLFunction g)
    : polytope_(std::move(polytope)), data_(std::move(g)) {
  if (!(pl().domain() == polytope_))
    throw InvalidArgument("ToricHomNorm: concave data lives on a different polytope");
}

ToricHomNorm::ToricHomNorm(RationalPolytope polytope, SampledConcave g)
    : polytope_(std::move(polytope)), data_(std::move(g)) {
  if (polytope_.dim() != 1)
    throw InvalidArgument("ToricHomNorm: sampled mode is supported in dimension 1 only");
  const auto& s = sampled();
  if (s.lo() != polytope_.vertices().front()[0] || s.hi() != polytope_.vertices().back()[0])
    throw InvalidArgument("ToricHomNorm: sample grid does not span the polytope");
}

ToricHomNorm ToricHomNorm::trivial(const RationalPolytope& p) {
  return ToricHomNorm(p, ConcavePLFunction(p, {AffinePiece{Vec(p.dim(), Rational(0)), Rational(0)}}));
}

const ConcavePLFunction& ToricHomNorm::pl() const {
  if (!is_pl()) throw InvalidArgument("operation requires exact PL data, input is sampled");
  return std::get<ConcavePLFunction>(data_);
}

const SampledConcave& ToricHomNorm::sampled() const {
  if (is_pl()) throw InvalidArgument("norm is PL, not sampled");
  return std::get<SampledConcave>(data_);
}

ToricHomNorm ToricHomNorm::shift(const Rational& c) const {
  if (is_pl()) return ToricHomNorm(polytope_, pl().shift(c));
  std::vector<Rational> vals = sampled().values();
  for (Rational& v : vals) v += c;
  return ToricHomNorm(polytope_, SampledConcave(sampled().lo(), sampled().hi(), std::move(vals)));
}

ToricHomNorm ToricHomNorm::scale(const Rational& t) const {
  if (t <= 0) throw InvalidArgument("scale: factor must be positive");
  if (is_pl()) return ToricHomNorm(polytope_, pl().scale(t));
  std::vector<Rational> vals = sampled().values();
  for (Rational& v : vals) v *= t;
  return ToricHomNorm(polytope_, SampledConcave(sampled().lo(), sampled().hi(), std::move(vals)));
}

// ---------------------------------------------------------------------
// TruncatedToricNorm

bool superadditive_check(const RationalPolytope& p, long base_degree,
                         const std::vector<std::vector<Vec>>& lattice,
                         const std::vector<std::vector<Rational>>& values, bool parallel) {
  (void)p;
  (void)base_degree;
  const long levels = static_cast<long>(values.size());
  std::vector<std::map<Vec, std::size_t, bool (*)(const Vec&, const Vec&)>> index;
  for (long r = 0; r < levels; ++r) {
    std::map<Vec, std::size_t, bool (*)(const Vec&, const Vec&)> m(lex_less);
    for (std::size_t i = 0; i < lattice[r].size(); ++i) m.emplace(lattice[r][i], i);
    index.push_back(std::move(m));
  }
  std::vector<std::pair<long, long>> pairs;
  for (long r1 = 0; r1 < levels; ++r1)
    for (long r2 = r1; r2 < levels; ++r2)
      if (r1 + r2 + 2 <= levels) pairs.emplace_back(r1, r2);

  bool ok = true;
  const long np = static_cast<long>(pairs.size());
#ifdef TNC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) reduction(&& : ok) if (parallel)
#endif
  for (long t = 0; t < np; ++t) {
    auto [r1, r2] = pairs[t];
    long rs = r1 + r2 + 1;
    bool local = true;
    for (std::size_t i = 0; i < lattice[r1].size() && local; ++i) {
      for (std::size_t j = 0; j < lattice[r2].size(); ++j) {
        Vec sum = add(lattice[r1][i], lattice[r2][j]);
        auto it = index[rs].find(sum);
        if (it == index[rs].end()) continue;  // cannot happen for exact dilates
        if (values[rs][it->second] < values[r1][i] + values[r2][j]) {
          local = false;
          break;
        }
      }
    }
    ok = ok && local;
  }
  return ok;
}

TruncatedToricNorm::TruncatedToricNorm(RationalPolytope polytope, long base_degree,
                                       std::vector<std::vector<Rational>> values,
                                       std::optional<Rational> declared_bound)
    : polytope_(std::move(polytope)), base_degree_(base_degree), values_(std::move(values)) {
  if (base_degree_ < 1) throw InvalidArgument("TruncatedToricNorm: base degree must be >= 1");
  if (values_.empty()) throw InvalidArgument("TruncatedToricNorm: no levels");
  for (long r = 0; r < level_count(); ++r) {
    lattice_.push_back(polytope_.lattice_points(level_degree(r)));
    if (lattice_[r].size() != values_[r].size())
      throw InvalidArgument("TruncatedToricNorm: level " + std::to_string(level_degree(r)) +
                            " has " + std::to_string(lattice_[r].size()) + " lattice points, got " +
                            std::to_string(values_[r].size()) + " values");
  }
  linear_bound_ = 0;
  for (long r = 0; r < level_count(); ++r) {
    for (const Rational& v : values_[r]) {
      Rational a = v < 0 ? Rational(-v) : v;
      linear_bound_ = std::max(linear_bound_, Rational(a / level_degree(r)));
    }
  }
  if (declared_bound && linear_bound_ > *declared_bound)
    throw InvalidArgument("TruncatedToricNorm: declared linear bound is violated");
  if (declared_bound) linear_bound_ = *declared_bound;
  if (!superadditive_check(polytope_, base_degree_, lattice_, values_, true))
    throw InvalidArgument("TruncatedToricNorm: table is not superadditive");
}

namespace reference {
bool superadditive(const TruncatedToricNorm& t) {
  std::vector<std::vector<Vec>> lattice;
  std::vector<std::vector<Rational>> values;
  for (long r = 0; r < t.level_count(); ++r) {
    lattice.push_back(t.lattice(r));
    values.push_back(t.level_values(r));
  }
  return superadditive_check(t.polytope(), t.base_degree(), lattice, values, false);
}
}  // namespace reference

Rational TruncatedToricNorm::value_at(long m, const Vec& alpha) const {
  if (!has_degree(m)) throw InvalidArgument("TruncatedToricNorm: degree not tabulated");
  long r = m / base_degree_ - 1;
  auto it = std::lower_bound(lattice_[r].begin(), lattice_[r].end(), alpha, lex_less);
  if (it == lattice_[r].end() || !(*it == alpha))
    throw InvalidArgument("TruncatedToricNorm: point outside the dilate");
  return values_[r][static_cast<std::size_t>(it - lattice_[r].begin())];
}

TruncatedToricNorm TruncatedToricNorm::rounded_down() const {
  std::vector<std::vector<Rational>> floored = values_;
  for (auto& level : floored)
    for (Rational& v : level) v = Rational(floor_rational(v), 1);
  return TruncatedToricNorm(polytope_, base_degree_, std::move(floored));
}

// ---------------------------------------------------------------------
// Constructors of toric norms

ToricHomNorm valuation_norm(const RationalPolytope& p, const Vec& xi) {
  if (static_cast<int>(xi.size()) != p.dim()) throw InvalidArgument("valuation_norm: dimension mismatch");
  AffinePiece piece{xi, -p.support_min(xi)};
  return ToricHomNorm(p, ConcavePLFunction(p, {std::move(piece)}));
}

ToricHomNorm divisorial_norm(const RationalPolytope& p, std::vector<AffinePiece> pieces) {
  if (pieces.empty()) throw InvalidArgument("divisorial_norm: empty piece list");
  return ToricHomNorm(p, ConcavePLFunction(p, std::move(pieces)));
}

std::vector<Rational> level_values(const ToricHomNorm& chi, long m, const std::vector<Vec>& pts) {
  const ConcavePLFunction& g = chi.pl();
  const long n = static_cast<long>(pts.size());
  const long chunk = 512;
  const long chunks = (n + chunk - 1) / chunk;
  std::vector<std::vector<Rational>> parts(static_cast<std::size_t>(chunks));
#ifdef TNC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long t = 0; t < chunks; ++t) {
    const Rational inv(1, m);
    std::vector<Rational> local;
    local.reserve(chunk);
    for (long i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i)
      local.push_back(g.eval(scale(pts[i], inv)) * m);
    parts[static_cast<std::size_t>(t)] = std::move(local);
  }
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  for (auto& part : parts)
    for (Rational& v : part) vals.push_back(std::move(v));
  return vals;
}

namespace reference {
std::vector<Rational> level_values(const ToricHomNorm& chi, long m, const std::vector<Vec>& pts) {
  const ConcavePLFunction& g = chi.pl();
  std::vector<Rational> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    vals[i] = g.eval(scale(pts[i], Rational(1, m))) * m;
  return vals;
}
}  // namespace reference

TruncatedToricNorm tabulate(const ToricHomNorm& chi, long d, long levels) {
  if (d < 1 || levels < 1) throw InvalidArgument("tabulate: degree and level count must be >= 1");
  std::vector<std::vector<Rational>> values;
  for (long r = 0; r < levels; ++r) {
    long m = d * (r + 1);
    auto pts = chi.polytope().lattice_points(m);
    if (chi.is_pl()) {
      values.push_back(level_values(chi, m, pts));
    } else {
      std::vector<Rational> vals;
      for (const Vec& a : pts) {
        auto v = chi.sampled().value_at(a[0] / m);
        if (!v) throw InvalidArgument("tabulate: degree " + std::to_string(m) + " misses the sample grid");
        vals.push_back(*v * m);
      }
      values.push_back(std::move(vals));
    }
  }
  return TruncatedToricNorm(chi.polytope(), d, std::move(values));
}

TruncatedToricNorm generated_table(const RationalPolytope& p, long d,
                                   const std::vector<Rational>& degree_d_values, long levels) {
  if (levels < 1) throw InvalidArgument("generated_table: levels must be >= 1");
  auto base_pts = p.lattice_points(d);
  if (base_pts.size() != degree_d_values.size())
    throw InvalidArgument("generated_table: degree-d value count mismatch");
  std::vector<std::vector<Vec>> lattice{base_pts};
  std::vector<std::vector<Rational>> values{degree_d_values};
  using Index = std::map<Vec, std::size_t, bool (*)(const Vec&, const Vec&)>;
  auto make_index = [&](const std::vector<Vec>& pts) {
    Index ix(lex_less);
    for (std::size_t i = 0; i < pts.size(); ++i) ix.emplace(pts[i], i);
    return ix;
  };
  Index prev_index = make_index(base_pts);
  for (long r = 1; r < levels; ++r) {
    auto pts = p.lattice_points(d * (r + 1));
    std::vector<Rational> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      bool reachable = false;
      Rational best(0);
      for (std::size_t j = 0; j < base_pts.size(); ++j) {
        Vec rest = sub(pts[i], base_pts[j]);
        auto it = prev_index.find(rest);
        if (it == prev_index.end()) continue;
        Rational cand = values[r - 1][it->second] + degree_d_values[j];
        if (!reachable || cand > best) best = cand;
        reachable = true;
      }
      if (!reachable)
        throw ComputeError("generated_table: lattice point without degree-d decomposition");
      vals[i] = best;
    }
    prev_index = make_index(pts);
    lattice.push_back(std::move(pts));
    values.push_back(std::move(vals));
  }
  return TruncatedToricNorm(p, d, std::move(values));
}

// ---------------------------------------------------------------------
// Metrics, volumes, spectra

namespace {
void require_same_polytope(const ToricHomNorm& a, const ToricHomNorm& b) {
  if (!(a.polytope() == b.polytope())) throw InvalidArgument("toric norms live on different polytopes");
}

PL1D pl1d_of(const ToricHomNorm& chi) {
  // 1D view of a norm's concave data (exact for PL, chord for sampled).
  if (chi.is_pl()) {
    const auto& g = chi.pl();
    PL1D out;
    for (const Vec& v : g.subdivision_vertices()) {
      out.xs.push_back(v[0]);
      out.ys.push_back(g.eval(v));
    }
    return out;
  }
  return sampled_lower_bound(chi.sampled());
}
}  // namespace

Rational distance_pow(const ToricHomNorm& a, const ToricHomNorm& b, unsigned p) {
  require_same_polytope(a, b);
  return lp_distance_pow(a.pl(), b.pl(), p);
}

Rational distance_l1(const ToricHomNorm& a, const ToricHomNorm& b) { return distance_pow(a, b, 1); }

Rational distance_sup(const ToricHomNorm& a, const ToricHomNorm& b) {
  require_same_polytope(a, b);
  return sup_distance(a.pl(), b.pl());
}

IntervalQ distance_l1_bounds(const ToricHomNorm& a, const ToricHomNorm& b) {
  require_same_polytope(a, b);
  if (a.is_pl() && b.is_pl()) {
    Rational d = distance_l1(a, b);
    return IntervalQ{d, d};
  }
  if (a.polytope().dim() != 1)
    throw InvalidArgument("distance_l1_bounds: sampled mode is 1-dimensional");
  // Pointwise enclosures l <= g <= u for both sides, then
  //   |g_a - g_b| <= max(u_a - l_b, u_b - l_a),
  //   |g_a - g_b| >= max(0, l_a - u_b, l_b - u_a).
  auto bounds_of = [](const ToricHomNorm& chi) {
    if (chi.is_pl()) {
      PL1D e = pl1d_of(chi);
      return std::pair<PL1D, PL1D>{e, e};
    }
    return std::pair<PL1D, PL1D>{sampled_lower_bound(chi.sampled()), sampled_upper_bound(chi.sampled())};
  };
  auto [la, ua] = bounds_of(a);
  auto [lb, ub] = bounds_of(b);
  PL1D upper = pl_max(pl_sub(ua, lb), pl_sub(ub, la));
  PL1D lower = pl_max(pl_pos_part(pl_sub(la, ub)), pl_pos_part(pl_sub(lb, ua)));
  Rational vol = a.polytope().volume();
  return IntervalQ{lower.integrate() / vol, upper.integrate() / vol};
}

Rational volume(const ToricHomNorm& chi) { return integrate_normalized(chi.pl()); }

IntervalQ volume_bounds(const ToricHomNorm& chi) {
  if (chi.is_pl()) {
    Rational v = volume(chi);
    return IntervalQ{v, v};
  }
  IntervalQ raw = chi.sampled().integral_bounds();
  Rational vol = chi.polytope().volume();
  return IntervalQ{raw.lo / vol, raw.hi / vol};
}

Rational lambda_max(const ToricHomNorm& chi) { return chi.pl().max_value(); }

PLMeasure1D spectral_measure(const ToricHomNorm& chi) {
  const ConcavePLFunction& g = chi.pl();
  if (chi.polytope().dim() > 2)
    throw InvalidArgument("spectral_measure: exact CDF requires dimension <= 2");
  std::vector<std::pair<RationalPolytope, AffinePiece>> cellwise;
  for (std::size_t j = 0; j < g.pieces().size(); ++j)
    cellwise.emplace_back(g.cells()[j], g.pieces()[j]);
  PLMeasure1D mu = pushforward_cdf(cellwise, chi.polytope().volume());
  if (!mu.jumps_only_at_top())
    throw ComputeError("spectral_measure: unexpected interior atom for concave data");
  return mu;
}

DiscreteMeasure spectral_measure_empirical(const ToricHomNorm& chi) {
  const SampledConcave& s = chi.sampled();
  std::vector<Rational> vals = s.values();
  return DiscreteMeasure::from_scalar_counts(vals);
}

DiscreteMeasure spectral_measure_truncated(const TruncatedToricNorm& chi, long m) {
  if (!chi.has_degree(m)) throw InvalidArgument("spectral_measure_truncated: degree not tabulated");
  long r = m / chi.base_degree() - 1;
  std::vector<Rational> scaled;
  for (const Rational& v : chi.level_values(r)) scaled.push_back(v / m);
  return DiscreteMeasure::from_scalar_counts(scaled);
}

Rational fs_at(const ToricHomNorm& chi, const Vec& xi) {
  const ConcavePLFunction& g = chi.pl();
  if (static_cast<int>(xi.size()) != chi.polytope().dim())
    throw InvalidArgument("fs_at: dimension mismatch");
  Rational best;
  bool first = true;
  for (const Vec& v : g.subdivision_vertices()) {
    Rational cand = g.eval(v) - dot(xi, v);
    if (first || cand > best) best = cand;
    first = false;
  }
  return best + chi.polytope().support_min(xi);
}

IntervalQ fs_bounds(const ToricHomNorm& chi, const Vec& xi) {
  if (chi.is_pl()) {
    Rational v = fs_at(chi, xi);
    return IntervalQ{v, v};
  }
  if (static_cast<int>(xi.size()) != 1) throw InvalidArgument("fs_bounds: dimension mismatch");
  IntervalQ conj = chi.sampled().conjugate_bounds(xi[0]);
  Rational shift = chi.polytope().support_min(xi);
  return IntervalQ{conj.lo + shift, conj.hi + shift};
}

DiscreteMeasure monge_ampere(const ToricHomNorm& chi) {
  const ConcavePLFunction& g = chi.pl();
  Rational vol = chi.polytope().volume();
  std::vector<Vec> atoms;
  std::vector<Rational> masses;
  for (std::size_t j = 0; j < g.pieces().size(); ++j) {
    atoms.push_back(g.pieces()[j].slope);
    masses.push_back(g.cells()[j].volume() / vol);
  }
  return DiscreteMeasure::from_weighted(std::move(atoms), std::move(masses));
}

namespace {

void require_lattice_dilate(const RationalPolytope& p, long d, const char* who) {
  for (const Vec& v : p.vertices())
    for (const Rational& c : v)
      if (denominator(Rational(c * d)) != 1)
        throw InvalidArgument(std::string(who) + ": degree " + std::to_string(d) +
                              " is unavailable (d*P is not a lattice polytope)");
}

ToricHomNorm envelope_norm(const RationalPolytope& p, std::vector<std::pair<Vec, Rational>> samples) {
  ConcavePLFunction env = concave_envelope(std::move(samples));
  return ToricHomNorm(p, std::move(env));
}

}  // namespace

ToricHomNorm canonical_approximant(const ToricHomNorm& chi, long d) {
  if (d < 1) throw InvalidArgument("canonical_approximant: d must be >= 1");
  const RationalPolytope& p = chi.polytope();
  require_lattice_dilate(p, d, "canonical_approximant");
  auto pts = p.lattice_points(d);
  std::vector<std::pair<Vec, Rational>> samples;
  for (const Vec& a : pts) {
    Vec alpha = scale(a, Rational(1, d));
    Rational y;
    if (chi.is_pl()) {
      y = chi.pl().eval(alpha);
    } else {
      auto v = chi.sampled().value_at(alpha[0]);
      if (!v)
        throw InvalidArgument("canonical_approximant: degree " + std::to_string(d) +
                              " misses the sample grid");
      y = *v;
    }
    samples.emplace_back(std::move(alpha), std::move(y));
  }
  return envelope_norm(p, std::move(samples));
}

ToricHomNorm canonical_approximant(const TruncatedToricNorm& chi, long d) {
  if (!chi.has_degree(d)) throw InvalidArgument("canonical_approximant: degree not tabulated");
  const RationalPolytope& p = chi.polytope();
  require_lattice_dilate(p, d, "canonical_approximant");
  long r = d / chi.base_degree() - 1;
  std::vector<std::pair<Vec, Rational>> samples;
  for (std::size_t i = 0; i < chi.lattice(r).size(); ++i)
    samples.emplace_back(scale(chi.lattice(r)[i], Rational(1, d)), chi.level_values(r)[i] / d);
  return envelope_norm(p, std::move(samples));
}

FiniteTypeResult is_finite_type(const ToricHomNorm& chi) {
  if (!chi.is_pl()) return FiniteTypeResult{false, "not PL", {}};
  ConvexPLFunction dual = legendre_transform(chi.pl());
  for (const AffinePiece& piece : dual.pieces()) {
    if (!chi.polytope().contains(piece.slope))
      return FiniteTypeResult{false, "certificate slope escapes the polytope", {}};
  }
  return FiniteTypeResult{true, "", dual.pieces()};
}

QuotientDistance quotient_d1(const ToricHomNorm& chi, const ToricHomNorm& chi2) {
  require_same_polytope(chi, chi2);
  // Optimal shift c is a median of g2 - g against the normalized measure.
  auto cellwise = refine_difference(chi2.pl(), chi.pl());
  Rational c = pushforward_median(cellwise, chi.polytope().volume());
  Rational value = distance_l1(ToricHomNorm(chi.polytope(), chi.pl().shift(c)), chi2);
  Rational bound = 2 * distance_l1(chi, chi2);
  Rational ac = c < 0 ? Rational(-c) : c;
  if (ac > bound) throw ComputeError("quotient_d1: minimizer exceeds the translation bound");
  return QuotientDistance{value, c};
}

FiniteDimNorm restrict_to_level(const ToricHomNorm& chi, long m) {
  if (m < 1) throw InvalidArgument("restrict_to_level: m must be >= 1");
  auto pts = chi.polytope().lattice_points(m);
  if (pts.empty()) throw ComputeError("restrict_to_level: dilate has no lattice points");
  std::vector<Rational> vals;
  if (chi.is_pl()) {
    vals = level_values(chi, m, pts);
  } else {
    for (const Vec& a : pts) {
      auto v = chi.sampled().value_at(a[0] / m);
      if (!v) throw InvalidArgument("restrict_to_level: level misses the sample grid");
      vals.push_back(*v * m);
    }
  }
  return FiniteDimNorm::diagonal(std::move(vals));
}

}  // namespace tnc

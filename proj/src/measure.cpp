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
#include "tnc/measure.hpp"

#include "tnc/linalg.hpp"

#include <algorithm>
#include <map>

namespace tnc {

DiscreteMeasure::DiscreteMeasure(std::vector<Vec> atoms, std::vector<Rational> masses)
    : atoms_(std::move(atoms)), masses_(std::move(masses)) {
  if (atoms_.empty() || atoms_.size() != masses_.size())
    throw InvalidArgument("DiscreteMeasure: atom/mass lists empty or mismatched");
  std::vector<std::size_t> order(atoms_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(atoms_[a], atoms_[b]); });
  std::vector<Vec> at;
  std::vector<Rational> ms;
  Rational total(0);
  for (std::size_t i : order) {
    if (!at.empty() && at.back() == atoms_[i])
      throw InvalidArgument("DiscreteMeasure: duplicate atoms");
    if (masses_[i] <= 0) throw InvalidArgument("DiscreteMeasure: non-positive mass");
    total += masses_[i];
    at.push_back(std::move(atoms_[i]));
    ms.push_back(std::move(masses_[i]));
  }
  if (total != 1) throw InvalidArgument("DiscreteMeasure: masses must sum to 1");
  atoms_ = std::move(at);
  masses_ = std::move(ms);
}

DiscreteMeasure DiscreteMeasure::dirac(Vec atom) {
  return DiscreteMeasure({std::move(atom)}, {Rational(1)});
}

DiscreteMeasure DiscreteMeasure::dirac_scalar(Rational value) {
  return dirac(Vec{std::move(value)});
}

DiscreteMeasure DiscreteMeasure::from_weighted(std::vector<Vec> atoms, std::vector<Rational> masses) {
  if (atoms.size() != masses.size()) throw InvalidArgument("from_weighted: size mismatch");
  std::map<Vec, Rational, bool (*)(const Vec&, const Vec&)> acc(lex_less);
  for (std::size_t i = 0; i < atoms.size(); ++i) acc[atoms[i]] += masses[i];
  std::vector<Vec> at;
  std::vector<Rational> ms;
  for (auto& [a, m] : acc) {
    if (m == 0) continue;
    at.push_back(a);
    ms.push_back(m);
  }
  return DiscreteMeasure(std::move(at), std::move(ms));
}

DiscreteMeasure DiscreteMeasure::from_scalar_counts(const std::vector<Rational>& values) {
  if (values.empty()) throw InvalidArgument("from_scalar_counts: empty");
  Rational w(1, static_cast<long>(values.size()));
  std::vector<Vec> atoms;
  std::vector<Rational> masses;
  for (const Rational& v : values) {
    atoms.push_back(Vec{v});
    masses.push_back(w);
  }
  return from_weighted(std::move(atoms), std::move(masses));
}

Rational DiscreteMeasure::mass_at(const Vec& atom) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == atom) return masses_[i];
  return Rational(0);
}

namespace {
void require_scalar(const DiscreteMeasure& m, const char* who) {
  if (m.dim() != 1) throw InvalidArgument(std::string(who) + ": defined for scalar measures only");
}
}  // namespace

DiscreteMeasure DiscreteMeasure::reflected() const {
  require_scalar(*this, "reflected");
  std::vector<Vec> at;
  for (const Vec& a : atoms_) at.push_back(Vec{-a[0]});
  return from_weighted(std::move(at), masses_);
}

DiscreteMeasure DiscreteMeasure::translated(const Rational& c) const {
  require_scalar(*this, "translated");
  std::vector<Vec> at;
  for (const Vec& a : atoms_) at.push_back(Vec{a[0] + c});
  return from_weighted(std::move(at), masses_);
}

DiscreteMeasure DiscreteMeasure::dilated(const Rational& t) const {
  require_scalar(*this, "dilated");
  if (t <= 0) throw InvalidArgument("dilated: factor must be positive");
  std::vector<Vec> at;
  for (const Vec& a : atoms_) at.push_back(Vec{a[0] * t});
  return from_weighted(std::move(at), masses_);
}

DiscreteMeasure DiscreteMeasure::clamped_below_zero() const {
  require_scalar(*this, "clamped_below_zero");
  std::vector<Vec> at;
  for (const Vec& a : atoms_) at.push_back(Vec{a[0] < 0 ? Rational(0) : a[0]});
  return from_weighted(std::move(at), masses_);
}

Rational DiscreteMeasure::barycenter() const {
  require_scalar(*this, "barycenter");
  Rational s(0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += atoms_[i][0] * masses_[i];
  return s;
}

Rational DiscreteMeasure::moment_pow(unsigned p) const {
  require_scalar(*this, "moment_pow");
  Rational s(0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += pow_rational(atoms_[i][0], p) * masses_[i];
  return s;
}

Rational DiscreteMeasure::abs_moment_pow(unsigned p) const {
  require_scalar(*this, "abs_moment_pow");
  Rational s(0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    Rational a = atoms_[i][0] < 0 ? Rational(-atoms_[i][0]) : atoms_[i][0];
    s += pow_rational(a, p) * masses_[i];
  }
  return s;
}

Rational wasserstein1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  require_scalar(a, "wasserstein1");
  require_scalar(b, "wasserstein1");
  // Integral of |F_a - F_b| over the merged support grid.
  std::vector<Rational> grid;
  for (const Vec& v : a.atoms()) grid.push_back(v[0]);
  for (const Vec& v : b.atoms()) grid.push_back(v[0]);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  Rational total(0), fa(0), fb(0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    fa += a.mass_at(Vec{grid[i]});
    fb += b.mass_at(Vec{grid[i]});
    Rational gap = fa - fb;
    if (gap < 0) gap = -gap;
    total += gap * (grid[i + 1] - grid[i]);
  }
  return total;
}

PLMeasure1D::PLMeasure1D(std::vector<Rational> breakpoints, std::vector<std::vector<Rational>> poly,
                         std::vector<Jump> jumps)
    : breakpoints_(std::move(breakpoints)), poly_(std::move(poly)), jumps_(std::move(jumps)) {
  if (breakpoints_.empty()) throw InvalidArgument("PLMeasure1D: no breakpoints");
  if (poly_.size() + 1 != breakpoints_.size())
    throw InvalidArgument("PLMeasure1D: need one polynomial per interval");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw InvalidArgument("PLMeasure1D: breakpoints not increasing");
  if (cdf(breakpoints_.back()) != 1) throw InvalidArgument("PLMeasure1D: total mass is not 1");
  // Monotonicity spot check at breakpoints (full monotonicity holds by
  // construction in pushforward_cdf).
  Rational prev(0);
  for (const Rational& t : breakpoints_) {
    Rational v = cdf(t);
    if (v < prev) throw InvalidArgument("PLMeasure1D: CDF not monotone");
    prev = v;
  }
}

namespace {
Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& t) {
  Rational v(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
  return v;
}
}  // namespace

Rational PLMeasure1D::cdf(const Rational& t) const {
  if (t < breakpoints_.front()) return Rational(0);
  Rational jump_part(0);
  for (const Jump& j : jumps_)
    if (j.location <= t) jump_part += j.mass;
  if (t >= breakpoints_.back()) {
    Rational cont = poly_.empty() ? Rational(0) : eval_poly(poly_.back(), breakpoints_.back());
    return cont + jump_part;
  }
  std::size_t k = 0;
  while (k + 2 < breakpoints_.size() && breakpoints_[k + 1] <= t) ++k;
  return eval_poly(poly_[k], t) + jump_part;
}

Rational PLMeasure1D::moment_pow(unsigned p) const {
  Rational total(0);
  for (const Jump& j : jumps_) total += pow_rational(j.location, p) * j.mass;
  for (std::size_t k = 0; k < poly_.size(); ++k) {
    // Density = derivative of the CDF polynomial on the interval.
    const auto& c = poly_[k];
    const Rational &a = breakpoints_[k], &b = breakpoints_[k + 1];
    for (std::size_t i = 1; i < c.size(); ++i) {
      // integral of t^p * i*c_i*t^(i-1) over [a, b]
      Rational coeff = c[i] * static_cast<int>(i);
      unsigned deg = p + static_cast<unsigned>(i) - 1;
      total += coeff * (pow_rational(b, deg + 1) - pow_rational(a, deg + 1)) / (static_cast<int>(deg) + 1);
    }
  }
  return total;
}

Rational PLMeasure1D::abs_moment_pow(unsigned p) const {
  Rational total(0);
  for (const Jump& j : jumps_) {
    Rational loc = j.location < 0 ? Rational(-j.location) : j.location;
    total += pow_rational(loc, p) * j.mass;
  }
  Rational sign_neg = (p % 2 == 0) ? Rational(1) : Rational(-1);
  for (std::size_t k = 0; k < poly_.size(); ++k) {
    const auto& c = poly_[k];
    Rational a = breakpoints_[k], b = breakpoints_[k + 1];
    auto segment = [&](const Rational& lo, const Rational& hi, const Rational& sgn) -> Rational {
      Rational s(0);
      for (std::size_t i = 1; i < c.size(); ++i) {
        Rational coeff = c[i] * static_cast<int>(i);
        unsigned deg = p + static_cast<unsigned>(i) - 1;
        s += coeff * (pow_rational(hi, deg + 1) - pow_rational(lo, deg + 1)) / (static_cast<int>(deg) + 1);
      }
      return sgn * s;
    };
    if (b <= 0)
      total += segment(a, b, sign_neg);
    else if (a >= 0)
      total += segment(a, b, Rational(1));
    else {
      total += segment(a, Rational(0), sign_neg);
      total += segment(Rational(0), b, Rational(1));
    }
  }
  return total;
}

bool PLMeasure1D::jumps_only_at_top() const {
  for (const Jump& j : jumps_)
    if (j.location != breakpoints_.back()) return false;
  return true;
}

std::string PLMeasure1D::csv_table(int extra_uniform_points) const {
  std::vector<Rational> ts = breakpoints_;
  const Rational lo = breakpoints_.front(), hi = breakpoints_.back();
  for (int i = 1; i <= extra_uniform_points; ++i)
    ts.push_back(lo + (hi - lo) * Rational(i, extra_uniform_points + 1));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::string out = "t,cdf\n";
  for (const Rational& t : ts) {
    out += format_rational(t);
    out += ",";
    out += format_rational(cdf(t));
    out += "\n";
  }
  return out;
}

namespace {

bool is_zero_slope(const AffinePiece& p) {
  for (const Rational& x : p.slope)
    if (x != 0) return false;
  return true;
}

// Unnormalized continuous-part CDF: total volume of {cell : ell <= t}
// over the sloped cells.
Rational continuous_cdf_at(const std::vector<std::pair<RationalPolytope, AffinePiece>>& sloped,
                           const Rational& t) {
  Rational vol(0);
  for (const auto& [cell, ell] : sloped) {
    auto cut = cell.clip({Halfspace{ell.slope, t - ell.constant}});
    if (cut) vol += cut->volume();
  }
  return vol;
}

std::vector<Rational> interpolate_poly(const std::vector<Rational>& ts, const std::vector<Rational>& ys) {
  const int k = static_cast<int>(ts.size());
  QMatrix m(k, k);
  for (int r = 0; r < k; ++r) {
    Rational pw(1);
    for (int c = 0; c < k; ++c) {
      m.at(r, c) = pw;
      pw *= ts[r];
    }
  }
  auto coeffs = m.solve(ys);
  if (!coeffs) throw ComputeError("CDF interpolation: singular Vandermonde");
  return *coeffs;
}

struct CdfParts {
  std::vector<Rational> breakpoints;
  std::vector<std::vector<Rational>> poly;
  std::vector<PLMeasure1D::Jump> jumps;
};

CdfParts build_cdf_parts(const std::vector<std::pair<RationalPolytope, AffinePiece>>& cellwise,
                         const Rational& total_volume) {
  if (cellwise.empty()) throw InvalidArgument("pushforward_cdf: no cells");
  const int dim = cellwise[0].first.dim();
  if (dim > 2) throw InvalidArgument("pushforward_cdf: exact CDF supported for dimension <= 2");

  std::vector<std::pair<RationalPolytope, AffinePiece>> sloped;
  std::map<Rational, Rational> atom_mass;
  std::vector<Rational> breaks;
  for (const auto& [cell, ell] : cellwise) {
    if (is_zero_slope(ell)) {
      atom_mass[ell.constant] += cell.volume() / total_volume;
      breaks.push_back(ell.constant);
    } else {
      sloped.push_back({cell, ell});
      for (const Vec& v : cell.vertices()) breaks.push_back(ell.eval(v));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  CdfParts parts;
  parts.breakpoints = breaks;
  for (auto& [loc, mass] : atom_mass) parts.jumps.push_back({loc, mass});

  // Interpolate the continuous part on each (t_k, t_{k+1}) at dim+1
  // interior nodes; it is a polynomial of degree <= dim there. Jumps are
  // stored separately and added back by PLMeasure1D::cdf.
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    std::vector<Rational> ts, ys;
    for (int i = 1; i <= dim + 1; ++i) {
      Rational t = breaks[k] + (breaks[k + 1] - breaks[k]) * Rational(i, dim + 2);
      ts.push_back(t);
      ys.push_back(continuous_cdf_at(sloped, t) / total_volume);
    }
    parts.poly.push_back(interpolate_poly(ts, ys));
  }
  return parts;
}

}  // namespace

PLMeasure1D pushforward_cdf(const std::vector<std::pair<RationalPolytope, AffinePiece>>& cellwise,
                            const Rational& total_volume) {
  CdfParts parts = build_cdf_parts(cellwise, total_volume);
  return PLMeasure1D(std::move(parts.breakpoints), std::move(parts.poly), std::move(parts.jumps));
}

Rational pushforward_median(const std::vector<std::pair<RationalPolytope, AffinePiece>>& cellwise,
                            const Rational& total_volume) {
  PLMeasure1D mu = pushforward_cdf(cellwise, total_volume);
  const Rational half(1, 2);
  const auto& bp = mu.breakpoints();
  if (mu.cdf(bp.front()) >= half) return bp.front();
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    if (mu.cdf(bp[k + 1]) < half) continue;
    // The crossing lies in (t_k, t_{k+1}] -- first try the right endpoint's
    // left limit; if the polynomial part already reaches 1/2 strictly
    // inside, solve for the exact crossing.
    Rational c0(0), c1(0), c2(0);
    {
      // Reconstruct the interval polynomial from exact CDF evaluations.
      std::vector<Rational> ts, ys;
      for (int i = 1; i <= 3; ++i) {
        Rational t = bp[k] + (bp[k + 1] - bp[k]) * Rational(i, 4);
        ts.push_back(t);
        ys.push_back(mu.cdf(t));
      }
      QMatrix m(3, 3);
      for (int r = 0; r < 3; ++r) {
        m.at(r, 0) = 1;
        m.at(r, 1) = ts[r];
        m.at(r, 2) = ts[r] * ts[r];
      }
      auto sol = m.solve(ys);
      if (!sol) throw ComputeError("median: interpolation failed");
      c0 = (*sol)[0];
      c1 = (*sol)[1];
      c2 = (*sol)[2];
    }
    auto poly_at = [&](const Rational& t) -> Rational { return c0 + c1 * t + c2 * t * t; };
    // Smallest root of the polynomial equal to 1/2 inside (t_k, t_{k+1}),
    // if any; otherwise the crossing happens by the jump at t_{k+1}.
    if (c2 == 0) {
      if (c1 != 0) {
        Rational t = (half - c0) / c1;
        if (t > bp[k] && t <= bp[k + 1] && poly_at(t) == half) return t;
      }
    } else {
      Rational disc = c1 * c1 - 4 * c2 * (c0 - half);
      if (disc >= 0) {
        BigInt num = numerator(disc), den = denominator(disc);
        if (mpz_perfect_square_p(num.backend().data()) && mpz_perfect_square_p(den.backend().data())) {
          BigInt rn = sqrt(num), rd = sqrt(den);
          Rational root(rn, rd);
          for (const Rational& sq : {Rational(-root), root}) {
            Rational t = (-c1 + sq) / (2 * c2);
            if (t > bp[k] && t <= bp[k + 1] && poly_at(t) == half && mu.cdf(t) >= half) return t;
          }
        } else {
          // An irrational crossing cannot be represented exactly.
          Rational left_limit = poly_at(bp[k + 1]);
          if (left_limit < half && mu.cdf(bp[k + 1]) >= half) return bp[k + 1];
          throw ComputeError("median: irrational crossing of the CDF");
        }
      }
    }
    if (mu.cdf(bp[k + 1]) >= half) return bp[k + 1];
  }
  return bp.back();
}

}  // namespace tnc

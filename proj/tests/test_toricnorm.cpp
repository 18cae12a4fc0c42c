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

#include <doctest.h>

#include "testutil.hpp"

using namespace tnc;
using namespace tnc::testutil;

namespace {

ToricHomNorm ramp_capped_third() {
  auto p = unit_interval();
  return divisorial_norm(p, {AffinePiece{Vec{Rational(1)}, Rational(0)},
                             AffinePiece{Vec{Rational(0)}, Rational(1, 3)}});
}

ToricHomNorm double_ramp() {
  auto p = unit_interval();
  return valuation_norm(p, Vec{Rational(2)});
}

SampledConcave parabola_samples(long grid) {
  // alpha (1 - alpha) sampled at k/grid.
  std::vector<Rational> vals;
  for (long k = 0; k <= grid; ++k) {
    Rational a(k, grid);
    vals.push_back(a * (1 - a));
  }
  return SampledConcave(Rational(0), Rational(1), std::move(vals));
}

}  // namespace

TEST_CASE("valuation norms are normalized to min zero") {
  auto chi = double_ramp();
  CHECK(chi.pl().min_value() == 0);
  CHECK(chi.pl().eval(Vec{Rational(1, 2)}) == 1);

  auto triv = valuation_norm(unit_interval(), Vec{Rational(0)});
  CHECK(triv.pl().pieces().size() == 1);
  CHECK(triv.pl().max_value() == 0);

  auto sq = unit_square();
  auto diag = valuation_norm(sq, Vec{Rational(1), Rational(1)});
  CHECK(volume(diag) == 1);  // <xi, barycenter> - min = 1
  // Negative direction: the normalizing constant moves the min to zero.
  auto neg = valuation_norm(sq, Vec{Rational(-1), Rational(2)});
  CHECK(neg.pl().min_value() == 0);
}

TEST_CASE("divisorial norms drop dominated pieces") {
  auto chi = ramp_capped_third();
  CHECK(chi.pl().pieces().size() == 2);
  auto p = unit_interval();
  auto redundant = divisorial_norm(p, {AffinePiece{Vec{Rational(1)}, Rational(0)},
                                       AffinePiece{Vec{Rational(1)}, Rational(5)}});
  CHECK(redundant.pl().pieces().size() == 1);
  CHECK_THROWS_AS(divisorial_norm(p, {}), InvalidArgument);
}

TEST_CASE("toric distances") {
  auto p = unit_interval();
  auto chi = double_ramp();
  auto triv = ToricHomNorm::trivial(p);
  CHECK(distance_l1(chi, triv) == 1);
  CHECK(distance_sup(chi, triv) == 2);
  CHECK(distance_pow(chi, triv, 2) == Rational(4, 3));
  CHECK(distance_l1(chi, chi) == 0);
  CHECK(distance_l1(ramp_capped_third(), triv) == Rational(5, 18));
  auto other_p = RationalPolytope::from_points(1, {Vec{Rational(0)}, Vec{Rational(2)}});
  CHECK_THROWS_AS(distance_l1(chi, ToricHomNorm::trivial(other_p)), InvalidArgument);
}

TEST_CASE("volume and lambda_max") {
  auto triv = ToricHomNorm::trivial(unit_interval());
  CHECK(volume(triv) == 0);
  CHECK(lambda_max(triv) == 0);
  CHECK(volume(ramp_capped_third()) == Rational(5, 18));
  CHECK(lambda_max(ramp_capped_third()) == Rational(1, 3));
  CHECK(volume(double_ramp()) == 1);
  CHECK(lambda_max(double_ramp()) == 2);
}

TEST_CASE("spectral measure of PL norms") {
  auto mu = spectral_measure(double_ramp());
  CHECK(mu.support_min() == 0);
  CHECK(mu.support_max() == 2);
  CHECK(mu.jumps().empty());
  CHECK(mu.cdf(Rational(1)) == Rational(1, 2));

  auto p = unit_interval();
  auto constant = divisorial_norm(p, {AffinePiece{Vec{Rational(0)}, Rational(7, 5)}});
  auto nu = spectral_measure(constant);
  REQUIRE(nu.jumps().size() == 1);
  CHECK(nu.jumps()[0].location == Rational(7, 5));
  CHECK(nu.jumps()[0].mass == 1);

  auto rho = spectral_measure(ramp_capped_third());
  REQUIRE(rho.jumps().size() == 1);
  CHECK(rho.jumps()[0].location == Rational(1, 3));
  CHECK(rho.jumps()[0].mass == Rational(2, 3));
  CHECK(rho.cdf(Rational(1, 4)) == Rational(1, 4));
}

TEST_CASE("spectral moments match the metric side") {
  // d_p(chi, triv)^p equals the p-th absolute moment of the spectral measure.
  Rng rng(83);
  auto p = unit_interval();
  auto triv = ToricHomNorm::trivial(p);
  for (int trial = 0; trial < 10; ++trial) {
    auto chi = random_pl_norm(rng, p, 3);
    auto mu = spectral_measure(chi);
    for (unsigned q : {1u, 2u, 3u}) {
      CHECK(mu.abs_moment_pow(q) == distance_pow(chi, triv, q));
    }
    CHECK(mu.moment_pow(1) == volume(chi));
  }
}

TEST_CASE("truncated norms: tabulation, level measures, round-down") {
  auto p = unit_interval();
  auto chi = double_ramp();
  auto table = tabulate(chi, 1, 4);
  CHECK(table.has_degree(2));
  CHECK_FALSE(table.has_degree(5));
  CHECK(table.value_at(2, Vec{Rational(1)}) == 2);  // 2 * g(1/2) = 2
  CHECK(reference::superadditive(table));

  // Level measure of h(m, a) = 2a at m = 2: three lattice points 0, 1, 2.
  auto sigma2 = spectral_measure_truncated(table, 2);
  CHECK(sigma2.mass_at(Vec{Rational(0)}) == Rational(1, 3));
  CHECK(sigma2.mass_at(Vec{Rational(1)}) == Rational(1, 3));
  CHECK(sigma2.mass_at(Vec{Rational(2)}) == Rational(1, 3));

  auto trivial_table = tabulate(ToricHomNorm::trivial(p), 1, 3);
  CHECK(spectral_measure_truncated(trivial_table, 3) == DiscreteMeasure::dirac_scalar(Rational(0)));

  // Fractional slopes floor to an integral table with sup gap below 1.
  auto frac = valuation_norm(p, Vec{Rational(1, 3)});
  auto ft = tabulate(frac, 1, 5);
  auto down = ft.rounded_down();
  for (long r = 0; r < ft.level_count(); ++r) {
    for (std::size_t i = 0; i < ft.level_values(r).size(); ++i) {
      Rational gap = ft.level_values(r)[i] - down.level_values(r)[i];
      CHECK(gap >= 0);
      CHECK(gap < 1);
      CHECK(denominator(down.level_values(r)[i]) == 1);
    }
  }
  // Integer tables are fixed by rounding.
  auto again = down.rounded_down();
  for (long r = 0; r < down.level_count(); ++r) CHECK(again.level_values(r) == down.level_values(r));

  // Constant half at level 1 floors to zero.
  TruncatedToricNorm half_table(p, 1, {{Rational(1, 2), Rational(1, 2)}});
  CHECK(half_table.rounded_down().level_values(0) == std::vector<Rational>{Rational(0), Rational(0)});
}

TEST_CASE("subvariety-style table: level measures converge to a point mass") {
  // h(m, a) = m for a >= 1, 0 at a = 0, on P = [0, 1].
  auto p = unit_interval();
  long levels = 12;
  std::vector<std::vector<Rational>> values;
  for (long r = 1; r <= levels; ++r) {
    std::vector<Rational> level;
    for (long a = 0; a <= r; ++a) level.push_back(a >= 1 ? Rational(r) : Rational(0));
    values.push_back(std::move(level));
  }
  TruncatedToricNorm sub(p, 1, std::move(values));
  auto sigma3 = spectral_measure_truncated(sub, 3);
  CHECK(sigma3.mass_at(Vec{Rational(0)}) == Rational(1, 4));
  CHECK(sigma3.mass_at(Vec{Rational(1)}) == Rational(3, 4));
  for (long m : {1L, 4L, 12L}) {
    auto sigma = spectral_measure_truncated(sub, m);
    CHECK(wasserstein1(sigma, DiscreteMeasure::dirac_scalar(Rational(1))) == Rational(1, m + 1));
  }
}

TEST_CASE("superadditivity violations are rejected") {
  auto p = unit_interval();
  // h(1, .) = (0, 1) but h(2, .) too small at 2.
  CHECK_THROWS_AS(TruncatedToricNorm(p, 1,
                                     {{Rational(0), Rational(1)},
                                      {Rational(0), Rational(1), Rational(1)}}),
                  InvalidArgument);
}

TEST_CASE("fubini-study values") {
  auto p = unit_interval();
  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    Vec xi{rng.rational(5, 3)};
    auto chi = valuation_norm(p, xi);
    CHECK(fs_at(chi, xi) == 0);  // self-pairing vanishes
    CHECK(fs_at(chi, Vec{Rational(0)}) == lambda_max(chi));
  }
  CHECK(fs_at(double_ramp(), Vec{Rational(0)}) == 2);
  CHECK(fs_at(ToricHomNorm::trivial(p), Vec{Rational(3, 2)}) == 0);

  auto sq = unit_square();
  for (int trial = 0; trial < 10; ++trial) {
    Vec xi{rng.rational(4, 3), rng.rational(4, 3)};
    auto chi = valuation_norm(sq, xi);
    CHECK(fs_at(chi, xi) == 0);
    CHECK(fs_at(chi, Vec{Rational(0), Rational(0)}) == lambda_max(chi));
  }
}

TEST_CASE("monge-ampere atoms and masses") {
  auto ma = monge_ampere(ramp_capped_third());
  CHECK(ma.mass_at(Vec{Rational(1)}) == Rational(1, 3));
  CHECK(ma.mass_at(Vec{Rational(0)}) == Rational(2, 3));

  auto single = monge_ampere(double_ramp());
  CHECK(single == DiscreteMeasure::dirac(Vec{Rational(2)}));

  auto p = unit_interval();
  auto tent = divisorial_norm(p, {AffinePiece{Vec{Rational(1)}, Rational(0)},
                                  AffinePiece{Vec{Rational(-1)}, Rational(1)}});
  auto ma2 = monge_ampere(tent);
  CHECK(ma2.mass_at(Vec{Rational(1)}) == Rational(1, 2));
  CHECK(ma2.mass_at(Vec{Rational(-1)}) == Rational(1, 2));
}

TEST_CASE("monge-ampere invariances (randomized)") {
  Rng rng(101);
  for (const auto& p : {unit_interval(), unit_square()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto chi = random_pl_norm(rng, p, 3);
      auto ma = monge_ampere(chi);
      Rational total(0);
      for (const Rational& m : ma.masses()) total += m;
      CHECK(total == 1);
      CHECK(monge_ampere(chi.shift(rng.rational(3, 2))) == ma);
      // Scaling pushes the atoms forward by the same factor.
      Rational t = rng.positive_rational(3, 2);
      auto scaled_ma = monge_ampere(chi.scale(t));
      std::vector<Vec> expected_atoms;
      for (const Vec& a : ma.atoms()) expected_atoms.push_back(scale(a, t));
      CHECK(scaled_ma == DiscreteMeasure::from_weighted(expected_atoms, ma.masses()));
      if (p.dim() == 1) CHECK(scaled_ma == ma.dilated(t));
    }
  }
}

TEST_CASE("exact spectral CDF is limited to low dimension") {
  auto cube = unit_cube();
  auto chi = valuation_norm(cube, Vec{Rational(1), Rational(1), Rational(1)});
  CHECK_THROWS_AS(spectral_measure(chi), InvalidArgument);
}

TEST_CASE("fs enclosures for sampled norms") {
  auto p = unit_interval();
  ToricHomNorm chi(p, parabola_samples(32));
  // sup over [0,1] of a(1-a) - a/2: at a = 1/4 the value is 1/16.
  auto b = fs_bounds(chi, Vec{Rational(1, 2)});
  CHECK(b.contains(Rational(1, 16)));
  CHECK(b.width() < Rational(1, 200));
  // PL enclosures collapse to a point.
  auto exactb = fs_bounds(ramp_capped_third(), Vec{Rational(0)});
  CHECK(exactb.lo == exactb.hi);
  CHECK(exactb.lo == Rational(1, 3));
}

TEST_CASE("canonical approximants of the sampled parabola") {
  auto p = unit_interval();
  ToricHomNorm chi(p, parabola_samples(64));
  auto a2 = canonical_approximant(chi, 2);
  REQUIRE(a2.is_pl());
  CHECK(volume(a2) == Rational(1, 8));
  CHECK(lambda_max(a2) == Rational(1, 4));
  auto a4 = canonical_approximant(chi, 4);
  CHECK(volume(a4) == Rational(5, 32));
  // Monotone in divisibility and below the true volume 1/6.
  Rational prev(0);
  for (long d : {2L, 4L, 8L, 16L, 32L, 64L}) {
    Rational v = volume(canonical_approximant(chi, d));
    CHECK(v > prev);
    CHECK(v < Rational(1, 6));
    prev = v;
  }
  CHECK_THROWS_AS(canonical_approximant(chi, 3), InvalidArgument);  // off the grid
}

TEST_CASE("PL norms with grid-compatible breakpoints are approximant fixed points") {
  auto chi = ramp_capped_third();
  auto a3 = canonical_approximant(chi, 3);
  CHECK(a3.pl() == chi.pl());
  // Coarser degrees change it: d = 1 sees only the endpoints.
  auto a1 = canonical_approximant(chi, 1);
  CHECK(volume(a1) < volume(chi));
  // Dominance g_d <= g and monotonicity in divisibility.
  Rng rng(103);
  auto sq = unit_square();
  for (int trial = 0; trial < 5; ++trial) {
    auto psi = random_pl_norm(rng, sq, 3);
    auto b1 = canonical_approximant(psi, 1);
    auto b2 = canonical_approximant(psi, 2);
    for (const Vec& v : psi.pl().subdivision_vertices()) {
      CHECK(b1.pl().eval(v) <= psi.pl().eval(v));
      CHECK(b1.pl().eval(v) <= b2.pl().eval(v));
      CHECK(b2.pl().eval(v) <= psi.pl().eval(v));
    }
  }
}

TEST_CASE("generated tables stay below the degree-d envelope") {
  auto p = unit_interval();
  // Degree-1 data of min{alpha, 1/3} restricted to {0, 1}: values 0, 1/3.
  auto gen = generated_table(p, 1, {Rational(0), Rational(1, 3)}, 6);
  CHECK(reference::superadditive(gen));
  auto env = canonical_approximant(gen, 1);
  for (long r = 0; r < gen.level_count(); ++r) {
    long m = gen.level_degree(r);
    for (std::size_t i = 0; i < gen.lattice(r).size(); ++i) {
      Vec scaled = scale(gen.lattice(r)[i], Rational(1, m));
      CHECK(env.pl().eval(scaled) >= gen.level_values(r)[i] / m);
    }
  }
  // The generated closure of linear data reproduces the linear table.
  auto lin = generated_table(p, 1, {Rational(0), Rational(2)}, 4);
  auto direct = tabulate(double_ramp(), 1, 4);
  for (long r = 0; r < 4; ++r) CHECK(lin.level_values(r) == direct.level_values(r));
}

TEST_CASE("finite type detection") {
  auto ft = is_finite_type(ramp_capped_third());
  CHECK(ft.finite_type);
  REQUIRE(ft.certificate.size() == 3);
  CHECK(ft.certificate[0].slope == Vec{Rational(1)});
  CHECK(ft.certificate[1].slope == Vec{Rational(1, 3)});
  CHECK(ft.certificate[2].slope == Vec{Rational(0)});

  CHECK(is_finite_type(ToricHomNorm::trivial(unit_interval())).finite_type);

  ToricHomNorm sampled(unit_interval(), parabola_samples(8));
  auto nope = is_finite_type(sampled);
  CHECK_FALSE(nope.finite_type);
  CHECK(nope.reason == "not PL");
}

TEST_CASE("quotient distance examples") {
  auto p = unit_interval();
  auto triv = ToricHomNorm::trivial(p);

  auto q1 = quotient_d1(double_ramp(), triv);
  CHECK(q1.minimizer == -1);  // median of 2 alpha under the uniform law
  CHECK(q1.value == Rational(1, 2));

  auto chi = ramp_capped_third();
  auto q2 = quotient_d1(chi, ToricHomNorm(p, chi.pl().shift(Rational(5))));
  CHECK(q2.value == 0);
  CHECK(q2.minimizer == 5);

  auto q3 = quotient_d1(chi, triv);
  CHECK(q3.minimizer == Rational(-1, 3));
  CHECK(q3.value == Rational(1, 18));
}

TEST_CASE("quotient distance never exceeds d1 and respects the shift bound") {
  Rng rng(107);
  for (const auto& p : {unit_interval(), unit_square()}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto a = valuation_norm(p, rng.vector(p.dim(), 3, 2));
      auto b = valuation_norm(p, rng.vector(p.dim(), 3, 2));
      auto q = quotient_d1(a, b);
      CHECK(q.value <= distance_l1(a, b));
      Rational ac = q.minimizer < 0 ? Rational(-q.minimizer) : q.minimizer;
      CHECK(ac <= 2 * distance_l1(a, b));
    }
  }
}

TEST_CASE("sup-metric identity for pairs of valuations") {
  Rng rng(109);
  auto sq = unit_square();
  for (int trial = 0; trial < 20; ++trial) {
    Vec v = rng.vector(2, 4, 3), w = rng.vector(2, 4, 3);
    auto cv = valuation_norm(sq, v);
    auto cw = valuation_norm(sq, w);
    Rational fs_vw = fs_at(cv, w), fs_wv = fs_at(cw, v);
    CHECK(distance_sup(cv, cw) == std::max(fs_vw, fs_wv));
  }
}

TEST_CASE("restriction to finite levels approaches the toric metrics") {
  auto p = unit_interval();
  auto chi = ramp_capped_third();
  auto triv = ToricHomNorm::trivial(p);
  Rational dinf = distance_sup(chi, triv);
  Rational d1 = distance_l1(chi, triv);
  Rational prev(0);
  for (long m : {1L, 2L, 4L, 8L, 16L, 32L, 64L}) {
    auto level_chi = restrict_to_level(chi, m);
    auto level_triv = restrict_to_level(triv, m);
    Rational level_inf = distance_sup(level_chi, level_triv) / m;
    CHECK(level_inf <= dinf);   // the finite level never exceeds the limit
    CHECK(level_inf >= prev);   // monotone along the divisibility chain
    prev = level_inf;
    if (m == 64) {
      CHECK(dinf - level_inf <= Rational(1, 100));
      Rational level_1 = distance_l1(level_chi, level_triv) / m;
      Rational gap = d1 - level_1;
      if (gap < 0) gap = -gap;
      CHECK(gap <= Rational(1, 100));
    }
  }
}

TEST_CASE("lambda_max bound against d_p for nonnegative norms") {
  Rng rng(113);
  for (const auto& p : {unit_interval(), unit_square()}) {
    auto triv = ToricHomNorm::trivial(p);
    for (int trial = 0; trial < 10; ++trial) {
      auto chi = random_nonnegative_pl_norm(rng, p, 3);
      for (unsigned q : {1u, 2u, 3u}) {
        Rational lhs = pow_rational(lambda_max(chi), q);
        Rational bound = Rational(binomial(static_cast<unsigned>(p.dim()) + q, q), 1);
        CHECK(lhs <= bound * distance_pow(chi, triv, q));
      }
    }
  }
  // Equality witness: g = 2 alpha, n = 1, p = 1.
  auto witness = double_ramp();
  CHECK(lambda_max(witness) == 2 * distance_l1(witness, ToricHomNorm::trivial(unit_interval())));
}

TEST_CASE("volume identity for the min of two PL norms") {
  Rng rng(127);
  for (const auto& p : {unit_interval(), unit_square()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_pl_norm(rng, p, 3);
      auto b = random_pl_norm(rng, p, 3);
      ToricHomNorm m(p, a.pl().min_with(b.pl()));
      CHECK(distance_l1(a, b) == volume(a) + volume(b) - 2 * volume(m));
    }
  }
}

TEST_CASE("biconjugation fixes every PL norm") {
  Rng rng(131);
  for (const auto& p : {unit_interval(), unit_square()}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto chi = random_pl_norm(rng, p, 4);
      CHECK(biconjugate(chi.pl()) == chi.pl());
    }
  }
}

TEST_CASE("sampled mode: construction guards") {
  CHECK_THROWS_AS(SampledConcave(Rational(0), Rational(1),
                                 {Rational(0), Rational(-1), Rational(0)}),
                  InvalidArgument);  // convex kink
  CHECK_THROWS_AS(SampledConcave(Rational(0), Rational(1), {Rational(0), Rational(1)}),
                  InvalidArgument);  // too few samples
  CHECK_THROWS_AS(ToricHomNorm(unit_square(),
                               SampledConcave(Rational(0), Rational(1),
                                              {Rational(0), Rational(1), Rational(0)})),
                  InvalidArgument);  // sampled mode is 1d only
}

TEST_CASE("sampled mode: rigorous enclosures") {
  auto p = unit_interval();
  ToricHomNorm chi(p, parabola_samples(32));
  auto vb = volume_bounds(chi);
  CHECK(vb.contains(Rational(1, 6)));
  CHECK(vb.width() < Rational(1, 100));
  auto sb = chi.sampled().sup_bounds();
  CHECK(sb.contains(Rational(1, 4)));
  // Exact operations refuse sampled input.
  CHECK_THROWS_AS(volume(chi), InvalidArgument);
  CHECK_THROWS_AS(monge_ampere(chi), InvalidArgument);
  CHECK_THROWS_AS(lambda_max(chi), InvalidArgument);
  // Empirical spectral measure exists instead.
  auto emp = spectral_measure_empirical(chi);
  CHECK(emp.mass_at(Vec{Rational(0)}) == Rational(2, 33));  // both endpoints share the value

  // Enclosed distance between the sampled norm and its PL approximant
  // contains the exact value 1/6 - 1/8 = 1/24.
  auto a2 = canonical_approximant(chi, 2);
  auto db = distance_l1_bounds(chi, a2);
  CHECK(db.contains(Rational(1, 24)));
}

TEST_CASE("level value kernels match the serial reference") {
  auto chi = ramp_capped_third();
  for (long m : {3L, 9L, 27L}) {
    auto pts = chi.polytope().lattice_points(m);
    CHECK(level_values(chi, m, pts) == reference::level_values(chi, m, pts));
  }
}

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
#include "tnc/energy.hpp"

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

}  // namespace

TEST_CASE("energy is the volume") {
  CHECK(energy(ToricHomNorm::trivial(unit_interval())) == 0);
  CHECK(energy(ramp_capped_third()) == Rational(5, 18));
  CHECK(energy(valuation_norm(unit_interval(), Vec{Rational(2)})) == 1);
}

TEST_CASE("energy form of the d1 identity") {
  Rng rng(137);
  for (const auto& p : {unit_interval(), unit_square()}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<AffinePiece> pa, pb;
      for (int j = 0; j < 3; ++j) {
        pa.push_back(AffinePiece{rng.vector(p.dim(), 3, 2), rng.rational(3, 2)});
        pb.push_back(AffinePiece{rng.vector(p.dim(), 3, 2), rng.rational(3, 2)});
      }
      ToricHomNorm a(p, ConcavePLFunction(p, pa));
      ToricHomNorm b(p, ConcavePLFunction(p, pb));
      ToricHomNorm floor(p, a.pl().min_with(b.pl()));
      CHECK(energy(a) + energy(b) - 2 * energy(floor) == distance_l1(a, b));
    }
  }
}

TEST_CASE("exact dual objective and cell masses") {
  auto p = unit_interval();
  auto mu = DiscreteMeasure::from_weighted({Vec{Rational(0)}, Vec{Rational(1)}},
                                           {Rational(1, 2), Rational(1, 2)});
  // Hand-solved optimum: weights (0, -1/2), F = 1/8, equal cell masses.
  auto [f, masses] = dual_objective_exact(p, mu, {Rational(0), Rational(-1, 2)});
  CHECK(f == Rational(1, 8));
  CHECK(masses[0] == Rational(1, 2));
  CHECK(masses[1] == Rational(1, 2));
  // Gauge invariance of the exact objective is literal.
  auto [f2, masses2] = dual_objective_exact(p, mu, {Rational(3), Rational(5, 2)});
  CHECK(f2 == f);
  CHECK(masses2 == masses);
  // An atom priced out of the minimum has an empty cell.
  auto [f3, masses3] = dual_objective_exact(p, mu, {Rational(0), Rational(10)});
  CHECK(masses3[1] == 0);
  CHECK(f3 < f);
}

TEST_CASE("dual objective is concave along random segments (exact)") {
  Rng rng(139);
  auto p = unit_square();
  auto mu = DiscreteMeasure::from_weighted(
      {Vec{Rational(0), Rational(0)}, Vec{Rational(1), Rational(0)}, Vec{Rational(0), Rational(1)}},
      {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> c0, c1, mid;
    for (int j = 0; j < 3; ++j) {
      c0.push_back(rng.rational(2, 3));
      c1.push_back(rng.rational(2, 3));
      mid.push_back((c0.back() + c1.back()) / 2);
    }
    Rational f0 = dual_objective_exact(p, mu, c0).first;
    Rational f1 = dual_objective_exact(p, mu, c1).first;
    Rational fm = dual_objective_exact(p, mu, mid).first;
    CHECK(2 * fm >= f0 + f1);
  }
}

TEST_CASE("energy dual of a single atom has the closed form") {
  auto p = unit_interval();
  auto [value, sol] = energy_dual(p, DiscreteMeasure::dirac(Vec{Rational(2)}));
  CHECK(value == 1);  // <xi, barycenter> - min_P <xi, .> at xi = 2
  CHECK(sol.converged);
  CHECK(sol.iterations == 0);

  auto [zero, sol0] = energy_dual(p, DiscreteMeasure::dirac(Vec{Rational(0)}));
  CHECK(zero == 0);
  CHECK(sol0.converged);
}

TEST_CASE("energy dual of the two-point measure on the interval") {
  auto p = unit_interval();
  auto mu = DiscreteMeasure::from_weighted({Vec{Rational(0)}, Vec{Rational(1)}},
                                           {Rational(1, 2), Rational(1, 2)});
  auto [value, sol] = energy_dual(p, mu);
  CHECK(sol.converged);
  CHECK(sol.residual <= 1e-6);
  CHECK(std::abs(to_double(value) - 0.125) <= 1e-8);
  // The reported value is the exact dual evaluated at the final weights.
  auto [fre, mre] = dual_objective_exact(p, mu, sol.weights_exact);
  CHECK(fre == sol.objective_exact);
}

TEST_CASE("energy dual input validation") {
  auto p = unit_interval();
  CHECK_THROWS_AS(energy_dual(unit_cube(), DiscreteMeasure::dirac(Vec{Rational(0), Rational(0), Rational(0)})),
                  InvalidArgument);
  CHECK_THROWS_AS(energy_dual(p, DiscreteMeasure::dirac(Vec{Rational(0), Rational(0)})),
                  InvalidArgument);
}

TEST_CASE("minimum norm closed forms") {
  CHECK(minimum_norm(ramp_capped_third()) == Rational(1, 18));
  CHECK(minimum_norm(ToricHomNorm::trivial(unit_interval())) == 0);
  Rng rng(149);
  for (const auto& p : {unit_interval(), unit_square()}) {
    for (int trial = 0; trial < 15; ++trial) {
      Vec xi = rng.vector(p.dim(), 4, 3);
      auto chi = valuation_norm(p, xi);
      CHECK(minimum_norm(chi) == volume(chi));
      auto [t, s] = t_and_s_invariants(p, xi);
      CHECK(s == volume(chi));
      CHECK(t == lambda_max(chi));
    }
  }
  // Translation invariance and scaling equivariance.
  auto chi = ramp_capped_third();
  CHECK(minimum_norm(ToricHomNorm(chi.polytope(), chi.pl().shift(Rational(7, 3)))) ==
        minimum_norm(chi));
  CHECK(minimum_norm(chi.scale(Rational(3))) == 3 * minimum_norm(chi));
}

TEST_CASE("minimum norm vanishes exactly on constants") {
  auto p = unit_interval();
  auto constant = divisorial_norm(p, {AffinePiece{Vec{Rational(0)}, Rational(5, 7)}});
  CHECK(minimum_norm(constant) == 0);
  CHECK(minimum_norm(ramp_capped_third()) > 0);
}

TEST_CASE("t and s invariants") {
  auto p = unit_interval();
  auto [t2, s2] = t_and_s_invariants(p, Vec{Rational(2)});
  CHECK(t2 == 2);
  CHECK(s2 == 1);
  auto [t0, s0] = t_and_s_invariants(p, Vec{Rational(0)});
  CHECK(t0 == 0);
  CHECK(s0 == 0);
  auto [tq, sq] = t_and_s_invariants(unit_square(), Vec{Rational(1), Rational(1)});
  CHECK(tq == 2);
  CHECK(sq == 1);
}

TEST_CASE("solver fixed point recovers the norm behind a gradient measure") {
  auto chi = ramp_capped_third();
  auto mu = monge_ampere(chi);
  auto [value, sol] = energy_dual(chi.polytope(), mu);
  CHECK(sol.converged);
  // Value matches the closed-form minimum norm.
  CHECK(std::abs(to_double(value) - to_double(minimum_norm(chi))) <= 1e-8);
  // Weights match the piece constants modulo a common shift. Atoms are
  // lex-sorted: slope 0 (constant 1/3) then slope 1 (constant 0).
  double shift = sol.weights[0] - to_double(Rational(1, 3));
  CHECK(std::abs(sol.weights[1] - (0.0 + shift)) <= 1e-6);
}

TEST_CASE("thmC chain: dirac energies equal expected vanishing orders") {
  Rng rng(151);
  auto sq = unit_square();
  for (int trial = 0; trial < 10; ++trial) {
    Vec xi = rng.vector(2, 3, 2);
    auto chi = valuation_norm(sq, xi);
    auto [t, s] = t_and_s_invariants(sq, xi);
    CHECK(volume(chi) == s);
    CHECK(minimum_norm(chi) == s);
    auto [value, sol] = energy_dual(sq, DiscreteMeasure::dirac(xi));
    CHECK(std::abs(to_double(value) - to_double(s)) <= 1e-9);
  }
}

TEST_CASE("dirac-measure distance is the quotient metric and is bounded by d_inf") {
  Rng rng(157);
  auto sq = unit_square();
  for (int trial = 0; trial < 10; ++trial) {
    Vec v = rng.vector(2, 3, 2), w = rng.vector(2, 3, 2);
    auto cv = valuation_norm(sq, v);
    auto cw = valuation_norm(sq, w);
    auto q = quotient_d1(cv, cw);
    CHECK(q.value <= distance_sup(cv, cw));
  }
}

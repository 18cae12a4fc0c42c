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
#include "tnc/linalg.hpp"
#include "tnc/lp.hpp"
#include "tnc/rational.hpp"

#include <doctest.h>

#include "testutil.hpp"

using namespace tnc;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("5/18") == Rational(5, 18));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(format_rational(parse_rational("-2/4")) == "-1/2");
  CHECK(format_rational(Rational(3)) == "3");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("a"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("floor, ceil, pow") {
  CHECK(floor_rational(Rational(-7, 2)) == -4);
  CHECK(floor_rational(Rational(7, 2)) == 3);
  CHECK(ceil_rational(Rational(7, 2)) == 4);
  CHECK(floor_rational(Rational(4)) == 4);
  CHECK(pow_rational(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(pow_rational(Rational(5), 0) == 1);
}

TEST_CASE("rationalize recovers small fractions") {
  CHECK(rationalize(0.5, 1000000) == Rational(1, 2));
  CHECK(rationalize(-0.125, 1000000) == Rational(-1, 8));
  CHECK(rationalize(to_double(Rational(3, 7)), 1000000) == Rational(3, 7));
  CHECK(rationalize(0.0, 1000000) == 0);
  // Bounded denominator: best approximation of pi with q <= 113 is 355/113.
  CHECK(rationalize(3.14159265358979, 200) == Rational(355, 113));
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 0) == 1);
  CHECK(binomial(2, 5) == 0);
  CHECK(binomial(6, 3) == 20);
}

TEST_CASE("matrix rank, determinant, solve") {
  QMatrix m(2, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 1;
  m.at(1, 0) = 0; m.at(1, 1) = 1;
  CHECK(m.rank() == 2);
  CHECK(m.determinant() == 1);
  auto x = m.solve(Vec{Rational(3), Rational(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);

  QMatrix s(2, 2);
  s.at(0, 0) = 1; s.at(0, 1) = 2;
  s.at(1, 0) = 2; s.at(1, 1) = 4;
  CHECK(s.rank() == 1);
  CHECK(s.determinant() == 0);
  CHECK_FALSE(s.solve(Vec{Rational(1), Rational(0)}).has_value());
}

TEST_CASE("kernel basis spans the kernel") {
  QMatrix m(1, 3);
  m.at(0, 0) = 1; m.at(0, 1) = 1; m.at(0, 2) = 1;
  auto k = m.kernel_basis();
  REQUIRE(k.size() == 2);
  for (const Vec& v : k) CHECK(v[0] + v[1] + v[2] == 0);
  CHECK(rank_of(k, 3) == 2);
}

TEST_CASE("rank extender uses first-nonzero pivoting deterministically") {
  RankExtender ext(3);
  CHECK(ext.try_add(Vec{Rational(0), Rational(1), Rational(1)}));
  CHECK_FALSE(ext.try_add(Vec{Rational(0), Rational(2), Rational(2)}));
  CHECK(ext.try_add(Vec{Rational(1), Rational(0), Rational(0)}));
  CHECK(ext.in_span(Vec{Rational(3), Rational(5), Rational(5)}));
  CHECK_FALSE(ext.in_span(Vec{Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("span intersection") {
  // span{e1, e2} cap span{e2, e3} = span{e2} in Q^3.
  std::vector<Vec> a = {Vec{Rational(1), Rational(0), Rational(0)}, Vec{Rational(0), Rational(1), Rational(0)}};
  std::vector<Vec> b = {Vec{Rational(0), Rational(1), Rational(0)}, Vec{Rational(0), Rational(0), Rational(1)}};
  auto inter = intersect_spans(a, b, 3);
  REQUIRE(inter.size() == 1);
  CHECK(inter[0][0] == 0);
  CHECK(inter[0][2] == 0);
  CHECK(inter[0][1] != 0);
}

TEST_CASE("lp feasibility and hull membership") {
  // x + y = 1, x - y = 0, x,y >= 0 -> feasible at (1/2, 1/2).
  CHECK(lp_feasible({Vec{Rational(1), Rational(1)}, Vec{Rational(1), Rational(-1)}},
                    Vec{Rational(1), Rational(0)}));
  // x + y = -1 with x,y >= 0 -> infeasible.
  CHECK_FALSE(lp_feasible({Vec{Rational(1), Rational(1)}}, Vec{Rational(-1)}));

  std::vector<Vec> tri = {Vec{Rational(0), Rational(0)}, Vec{Rational(1), Rational(0)},
                          Vec{Rational(0), Rational(1)}};
  CHECK(point_in_hull(Vec{Rational(1, 4), Rational(1, 4)}, tri));
  CHECK(point_in_hull(Vec{Rational(1, 2), Rational(1, 2)}, tri));  // boundary
  CHECK_FALSE(point_in_hull(Vec{Rational(2, 3), Rational(2, 3)}, tri));
  // Lower-dimensional hull: a segment.
  std::vector<Vec> seg = {Vec{Rational(0), Rational(0)}, Vec{Rational(2), Rational(2)}};
  CHECK(point_in_hull(Vec{Rational(1), Rational(1)}, seg));
  CHECK_FALSE(point_in_hull(Vec{Rational(1), Rational(0)}, seg));
}

TEST_CASE("below_upper_hull handles degenerate sample sets") {
  std::vector<Vec> alphas = {Vec{Rational(0)}, Vec{Rational(1)}};
  std::vector<Rational> ys = {Rational(0), Rational(0)};
  CHECK(below_upper_hull(Vec{Rational(1, 2)}, Rational(-1), alphas, ys));
  CHECK(below_upper_hull(Vec{Rational(1, 2)}, Rational(0), alphas, ys));
  CHECK_FALSE(below_upper_hull(Vec{Rational(1, 2)}, Rational(1, 100), alphas, ys));
  CHECK_FALSE(below_upper_hull(Vec{Rational(2)}, Rational(-5), alphas, ys));
}

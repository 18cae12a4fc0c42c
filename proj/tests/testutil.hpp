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

#include "tnc/fdnorm.hpp"
#include "tnc/toricnorm.hpp"

#include <random>

namespace tnc::testutil {

/// Deterministic RNG for property tests: raw mt19937_64 draws only, so
/// streams are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  long int_in(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational rational(long max_abs_num, long max_den) {
    long num = int_in(-max_abs_num, max_abs_num);
    long den = int_in(1, max_den);
    return Rational(num, den);
  }

  Rational positive_rational(long max_num, long max_den) {
    long num = int_in(1, max_num);
    long den = int_in(1, max_den);
    return Rational(num, den);
  }

  Vec vector(int dim, long max_abs_num, long max_den) {
    Vec v;
    for (int i = 0; i < dim; ++i) v.push_back(rational(max_abs_num, max_den));
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

inline RationalPolytope unit_interval() {
  return RationalPolytope::from_points(1, {Vec{Rational(0)}, Vec{Rational(1)}});
}

inline RationalPolytope unit_square() {
  return RationalPolytope::from_points(
      2, {Vec{Rational(0), Rational(0)}, Vec{Rational(1), Rational(0)},
          Vec{Rational(0), Rational(1)}, Vec{Rational(1), Rational(1)}});
}

inline RationalPolytope standard_simplex2() {
  return RationalPolytope::from_points(
      2, {Vec{Rational(0), Rational(0)}, Vec{Rational(1), Rational(0)}, Vec{Rational(0), Rational(1)}});
}

inline RationalPolytope unit_cube() {
  std::vector<Vec> pts;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int c = 0; c <= 1; ++c) pts.push_back(Vec{Rational(a), Rational(b), Rational(c)});
  return RationalPolytope::from_points(3, pts);
}

/// Random invertible integer matrix built from the identity by a few
/// bounded shear operations; entries stay small.
inline QMatrix random_unimodular(Rng& rng, int n, int shears = 6) {
  QMatrix m = QMatrix::identity(n);
  for (int s = 0; s < shears; ++s) {
    int i = static_cast<int>(rng.int_in(0, n - 1));
    int j = static_cast<int>(rng.int_in(0, n - 1));
    if (i == j) continue;
    Rational f(rng.int_in(-2, 2));
    for (int r = 0; r < n; ++r) m.at(r, j) += f * m.at(r, i);
  }
  return m;
}

inline FiniteDimNorm random_norm(Rng& rng, int n, long value_range = 6) {
  std::vector<Rational> values;
  for (int i = 0; i < n; ++i) values.push_back(Rational(rng.int_in(-value_range, value_range), rng.int_in(1, 3)));
  return FiniteDimNorm(random_unimodular(rng, n), std::move(values));
}

/// Random PL toric norm with g >= 0 and min g = 0 on the given polytope.
inline ToricHomNorm random_nonnegative_pl_norm(Rng& rng, const RationalPolytope& p, int piece_count) {
  std::vector<AffinePiece> pieces;
  for (int j = 0; j < piece_count; ++j)
    pieces.push_back(AffinePiece{rng.vector(p.dim(), 3, 2), rng.rational(2, 2)});
  ConcavePLFunction g(p, std::move(pieces));
  return ToricHomNorm(p, g.shift(-g.min_value()));
}

/// Random PL toric norm without sign normalization.
inline ToricHomNorm random_pl_norm(Rng& rng, const RationalPolytope& p, int piece_count) {
  std::vector<AffinePiece> pieces;
  for (int j = 0; j < piece_count; ++j)
    pieces.push_back(AffinePiece{rng.vector(p.dim(), 3, 2), rng.rational(3, 2)});
  return ToricHomNorm(p, ConcavePLFunction(p, std::move(pieces)));
}

}  // namespace tnc::testutil

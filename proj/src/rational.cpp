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
#include "tnc/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace tnc {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw InvalidArgument("cannot parse rational: '" + text + "'");
  BigInt n(num), d(den);
  if (d == 0) throw InvalidArgument("zero denominator: '" + text + "'");
  return Rational(n, d);  // the (n, d) constructor canonicalizes
}

std::string format_rational(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

BigInt floor_rational(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q), r;
  mpz_fdiv_q(r.backend().data(), n.backend().data(), d.backend().data());
  return r;
}

BigInt ceil_rational(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q), r;
  mpz_cdiv_q(r.backend().data(), n.backend().data(), d.backend().data());
  return r;
}

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot rationalize non-finite value");
  if (max_den < 1) throw InvalidArgument("max_den must be positive");
  bool neg = x < 0;
  double y = neg ? -x : x;

  // Continued-fraction convergents p/q of y until the denominator bound.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = y;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 9.2e18) break;
    std::int64_t a = static_cast<std::int64_t>(fl);
    if (q1 != 0 && a > (max_den - q0) / q1) {
      // A semiconvergent with the largest admissible coefficient.
      std::int64_t amax = (max_den - q0) / q1;
      if (amax > 0) {
        std::int64_t p = amax * p1 + p0, q = amax * q1 + q0;
        // Keep it only if it improves on the previous convergent.
        Rational cand(p, q), prev(p1, q1);
        double e_cand = std::abs(to_double(cand) - y);
        double e_prev = std::abs(to_double(prev) - y);
        if (e_cand < e_prev) { p1 = p; q1 = q; }
      }
      break;
    }
    std::int64_t p = a * p1 + p0, q = a * q1 + q0;
    p0 = p1; q0 = q1; p1 = p; q1 = q;
    double rem = frac - fl;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  Rational r(p1, q1 == 0 ? 1 : q1);
  return neg ? Rational(-r) : r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

std::string format_ext(const ExtRational& v) {
  return v.infinite ? "inf" : format_rational(v.value);
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: dimension mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidArgument("sub: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw InvalidArgument("add: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec scale(const Vec& a, const Rational& t) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
  return r;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

std::string format_vec(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_rational(v[i]);
  }
  return s + ")";
}

}  // namespace tnc

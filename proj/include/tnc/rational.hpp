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

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tnc {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Errors raised on malformed inputs (dimension mismatch, degenerate
/// geometry, unparsable scalars, unsupported modes).
class InvalidArgument : public std::runtime_error {
 public:
  explicit InvalidArgument(const std::string& msg) : std::runtime_error(msg) {}
};

/// Errors raised when a computation cannot be completed (solver
/// non-convergence, values outside the exactly representable range).
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses "p", "-p", or "p/q" into a canonical rational. Throws
/// InvalidArgument on anything else (including q == 0).
Rational parse_rational(const std::string& text);

/// Canonical textual form: "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& q);

BigInt floor_rational(const Rational& q);
BigInt ceil_rational(const Rational& q);

Rational pow_rational(const Rational& base, unsigned exponent);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Best rational approximation of x with denominator bounded by max_den,
/// via the continued-fraction convergents of x. Deterministic.
Rational rationalize(double x, std::int64_t max_den);

/// binomial(n, k) as an exact integer.
BigInt binomial(unsigned n, unsigned k);

/// A rational extended with a single +infinity marker, used as the value
/// of a non-Archimedean norm (the zero vector evaluates to +infinity).
struct ExtRational {
  bool infinite = false;
  Rational value;  // meaningful only when !infinite

  static ExtRational infinity() { return ExtRational{true, Rational(0)}; }
  static ExtRational of(Rational v) { return ExtRational{false, std::move(v)}; }

  bool operator==(const ExtRational& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

std::string format_ext(const ExtRational& v);

/// Vector of exact rationals; the workhorse coordinate type.
using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& t);
bool lex_less(const Vec& a, const Vec& b);
std::string format_vec(const Vec& v);

}  // namespace tnc

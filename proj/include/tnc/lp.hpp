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

#include "tnc/rational.hpp"

namespace tnc {

/// Exact feasibility of {x >= 0 : A x = b}, decided by a phase-1 simplex
/// with Bland's rule (terminates on degenerate instances, deterministic).
/// rows[i] is the i-th row of A.
bool lp_feasible(const std::vector<Vec>& rows, const Vec& rhs);

/// Is p in the convex hull of pts? Exact, any dimension, handles
/// lower-dimensional hulls.
bool point_in_hull(const Vec& p, const std::vector<Vec>& pts);

/// Is the lifted point (alpha, y) dominated by the upper hull of the
/// lifted set {(alphas[k], ys[k])}? True iff some convex combination of
/// the alphas equals alpha with combined value >= y.
bool below_upper_hull(const Vec& alpha, const Rational& y,
                      const std::vector<Vec>& alphas, const std::vector<Rational>& ys);

}  // namespace tnc

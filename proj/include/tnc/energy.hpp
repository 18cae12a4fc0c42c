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

#include "tnc/measure.hpp"
#include "tnc/toricnorm.hpp"

namespace tnc {

/// Report of one semi-discrete transport solve. Weights are gauge-fixed
/// (first weight zero); cell volumes per iterate come from the exact
/// polyhedral kernel at rationalized weights, so objective_exact is the
/// true dual value at weights_exact.
struct OTSolution {
  std::vector<double> weights;
  std::vector<double> masses;
  double objective = 0;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  std::vector<Rational> weights_exact;
  Rational objective_exact;
  Rational energy_dual_exact;
};

struct OTOptions {
  double mass_tolerance = 1e-6;
  int max_iterations = 10000;
  std::int64_t max_denominator = 1000000;
};

/// Monge-Ampere energy of a toric norm; equals its volume, exposed under
/// the energy name so energy-side identities read naturally.
Rational energy(const ToricHomNorm& chi);

/// Exact dual objective F(c) = integral of min_j(<xi_j, a> + c_j) against
/// the normalized measure minus sum_j m_j c_j, with the per-atom cell
/// masses as a side product (zero mass for inactive atoms).
std::pair<Rational, std::vector<Rational>> dual_objective_exact(const RationalPolytope& p,
                                                                const DiscreteMeasure& mu,
                                                                const std::vector<Rational>& weights);

/// Energy of a finitely supported measure: maximizes the concave dual by
/// gradient ascent with Armijo backtracking. Returns the energy value
/// E(mu) = max F - sum_j m_j min_P <xi_j, .> and the solver report.
/// Throws ComputeError on non-convergence.
std::pair<Rational, OTSolution> energy_dual(const RationalPolytope& p, const DiscreteMeasure& mu,
                                            const OTOptions& options = {});

/// Closed-form minimum norm of a PL toric norm:
///   |chi| = integral of g - sum_cells mass_j (c_j + min_P <xi_j, .>).
Rational minimum_norm(const ToricHomNorm& chi);

/// Maximal and expected vanishing order of the valuation xi:
///   T = max_P g_xi,  S = <xi, barycenter> - min_P <xi, .>.
std::pair<Rational, Rational> t_and_s_invariants(const RationalPolytope& p, const Vec& xi);

}  // namespace tnc

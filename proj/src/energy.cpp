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

#include <cmath>

namespace tnc {

Rational energy(const ToricHomNorm& chi) { return volume(chi); }

std::pair<Rational, std::vector<Rational>> dual_objective_exact(const RationalPolytope& p,
                                                                const DiscreteMeasure& mu,
                                                                const std::vector<Rational>& weights) {
  const std::size_t j_count = mu.atoms().size();
  if (weights.size() != j_count) throw InvalidArgument("dual_objective_exact: weight count mismatch");
  if (mu.dim() != p.dim()) throw InvalidArgument("dual_objective_exact: atom dimension mismatch");

  // Cells of min_j(<xi_j, a> + c_j) over P, computed directly so that
  // atoms whose piece is never active report mass zero.
  std::vector<Rational> masses(j_count, Rational(0));
  Rational integral(0);
  for (std::size_t j = 0; j < j_count; ++j) {
    std::vector<Halfspace> dominance;
    for (std::size_t k = 0; k < j_count; ++k) {
      if (k == j) continue;
      dominance.push_back(Halfspace{sub(mu.atoms()[j], mu.atoms()[k]), weights[k] - weights[j]});
    }
    auto cell = p.clip(dominance);
    if (!cell) continue;
    masses[j] = cell->volume() / p.volume();
    integral += integrate_affine_pow(*cell, AffinePiece{mu.atoms()[j], weights[j]}, 1);
  }
  Rational value = integral / p.volume();
  for (std::size_t j = 0; j < j_count; ++j) value -= mu.masses()[j] * weights[j];
  return {value, masses};
}

std::pair<Rational, OTSolution> energy_dual(const RationalPolytope& p, const DiscreteMeasure& mu,
                                            const OTOptions& options) {
  if (p.dim() > 2) throw InvalidArgument("energy_dual: supported in dimension <= 2");
  if (mu.dim() != p.dim()) throw InvalidArgument("energy_dual: atom dimension mismatch");
  const std::size_t j_count = mu.atoms().size();

  Rational normalization(0);
  for (std::size_t j = 0; j < j_count; ++j)
    normalization += mu.masses()[j] * p.support_min(mu.atoms()[j]);

  OTSolution sol;
  std::vector<Rational> c(j_count, Rational(0));
  auto [f, masses] = dual_objective_exact(p, mu, c);

  auto residual_of = [&](const std::vector<Rational>& m) {
    Rational r(0);
    for (std::size_t j = 0; j < j_count; ++j) {
      Rational gap = m[j] - mu.masses()[j];
      if (gap < 0) gap = -gap;
      r = std::max(r, gap);
    }
    return r;
  };

  const Rational damping(1, 16);
  double step = 1.0;
  std::vector<double> prev_c, prev_grad;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    Rational res = residual_of(masses);
    if (to_double(res) <= options.mass_tolerance) {
      sol.converged = true;
      break;
    }
    // Fixed damping for atoms whose cell vanished, ahead of the gradient.
    bool damped = false;
    for (std::size_t j = 0; j < j_count; ++j) {
      if (masses[j] == 0) {
        c[j] -= damping;
        damped = true;
      }
    }
    if (damped) {
      std::tie(f, masses) = dual_objective_exact(p, mu, c);
      prev_c.clear();
      continue;
    }
    std::vector<double> grad(j_count), c_now(j_count);
    double grad_norm2 = 0;
    for (std::size_t j = 0; j < j_count; ++j) {
      grad[j] = to_double(masses[j] - mu.masses()[j]);
      grad_norm2 += grad[j] * grad[j];
      c_now[j] = to_double(c[j]);
    }
    // Barzilai-Borwein step length from the last weight/gradient change,
    // safeguarded below by Armijo backtracking on the exact objective.
    if (!prev_c.empty()) {
      double sy = 0, yy = 0;
      for (std::size_t j = 0; j < j_count; ++j) {
        double s = c_now[j] - prev_c[j], y = grad[j] - prev_grad[j];
        sy += s * y;
        yy += y * y;
      }
      if (yy > 1e-30) {
        double bb = std::abs(sy) / yy;
        if (bb > 1e-12 && bb < 1e6) step = bb;
      }
    }
    prev_c = c_now;
    prev_grad = grad;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      std::vector<Rational> cand(j_count);
      for (std::size_t j = 0; j < j_count; ++j)
        cand[j] = rationalize(c_now[j] + step * grad[j], options.max_denominator);
      Rational gauge = cand[0];
      for (Rational& x : cand) x -= gauge;
      auto [fc, mc] = dual_objective_exact(p, mu, cand);
      Rational ascent = rationalize(1e-4 * step * grad_norm2, 1000000000);
      if (fc - f >= ascent) {
        c = std::move(cand);
        f = fc;
        masses = std::move(mc);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw ComputeError("energy_dual: line search stalled before reaching the mass tolerance");
  }
  if (!sol.converged)
    throw ComputeError("energy_dual: no convergence within the iteration cap");

  sol.iterations = iter;
  sol.residual = to_double(residual_of(masses));
  sol.weights_exact = c;
  sol.objective_exact = f;
  sol.energy_dual_exact = f - normalization;
  for (std::size_t j = 0; j < j_count; ++j) {
    sol.weights.push_back(to_double(c[j]));
    sol.masses.push_back(to_double(masses[j]));
  }
  sol.objective = to_double(f);
  return {sol.energy_dual_exact, sol};
}

Rational minimum_norm(const ToricHomNorm& chi) {
  const ConcavePLFunction& g = chi.pl();
  const RationalPolytope& p = chi.polytope();
  Rational value = integrate_normalized(g);
  for (std::size_t j = 0; j < g.pieces().size(); ++j) {
    Rational mass = g.cells()[j].volume() / p.volume();
    value -= mass * (g.pieces()[j].constant + p.support_min(g.pieces()[j].slope));
  }
  return value;
}

std::pair<Rational, Rational> t_and_s_invariants(const RationalPolytope& p, const Vec& xi) {
  Rational mn = p.support_min(xi), mx = p.support_max(xi);
  Rational t = mx - mn;
  Rational s = dot(xi, p.barycenter()) - mn;
  return {t, s};
}

}  // namespace tnc

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
#include "tnc/lp.hpp"

namespace tnc {

bool lp_feasible(const std::vector<Vec>& rows, const Vec& rhs) {
  const int m = static_cast<int>(rows.size());
  if (static_cast<int>(rhs.size()) != m) throw InvalidArgument("lp_feasible: rhs size mismatch");
  const int n = m == 0 ? 0 : static_cast<int>(rows[0].size());
  if (m == 0) return true;

  // Tableau with columns [x (n) | artificial (m) | rhs]; phase-1 objective
  // minimizes the sum of artificials.
  const int cols = n + m + 1;
  std::vector<Vec> t(m, Vec(cols, Rational(0)));
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw InvalidArgument("lp_feasible: ragged rows");
    bool flip = rhs[i] < 0;
    for (int j = 0; j < n; ++j) t[i][j] = flip ? -rows[i][j] : rows[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = flip ? -rhs[i] : rhs[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced costs of the phase-1 objective (row of -sum of constraint rows
  // over the artificial basis).
  Vec z(cols, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < cols; ++j) z[j] -= t[i][j];

  while (true) {
    // Bland: entering = first column with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (z[j] < 0) { enter = j; break; }
    }
    if (enter < 0) break;
    // Ratio test; ties broken by smallest basis index (Bland).
    int leave = -1;
    Rational best(0);
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded phase-1 cannot happen; defensive exit
    Rational piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    Rational fz = z[enter];
    if (fz != 0)
      for (int j = 0; j < cols; ++j) z[j] -= fz * t[leave][j];
    basis[leave] = enter;
  }

  // Feasible iff all artificials are zero: objective value = -z[rhs].
  Rational obj(0);
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) obj += t[i][cols - 1];
  return obj == 0;
}

bool point_in_hull(const Vec& p, const std::vector<Vec>& pts) {
  if (pts.empty()) return false;
  const int n = static_cast<int>(p.size());
  std::vector<Vec> rows(n + 1, Vec(pts.size(), Rational(0)));
  Vec rhs(n + 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (int i = 0; i < n; ++i) rows[i][k] = pts[k][i];
    rows[n][k] = 1;
  }
  for (int i = 0; i < n; ++i) rhs[i] = p[i];
  rhs[n] = 1;
  return lp_feasible(rows, rhs);
}

bool below_upper_hull(const Vec& alpha, const Rational& y,
                      const std::vector<Vec>& alphas, const std::vector<Rational>& ys) {
  if (alphas.empty()) return false;
  if (alphas.size() != ys.size()) throw InvalidArgument("below_upper_hull: size mismatch");
  const int n = static_cast<int>(alpha.size());
  const int k = static_cast<int>(alphas.size());
  // Variables: lambda_1..lambda_k >= 0, slack s >= 0.
  // sum lambda alpha_j = alpha, sum lambda = 1, sum lambda y_j - s = y.
  std::vector<Vec> rows(n + 2, Vec(k + 1, Rational(0)));
  Vec rhs(n + 2);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) rows[i][j] = alphas[j][i];
    rows[n][j] = 1;
    rows[n + 1][j] = ys[j];
  }
  rows[n + 1][k] = -1;
  for (int i = 0; i < n; ++i) rhs[i] = alpha[i];
  rhs[n] = 1;
  rhs[n + 1] = y;
  return lp_feasible(rows, rhs);
}

}  // namespace tnc

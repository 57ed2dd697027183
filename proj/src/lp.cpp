// Copyright 2026 The opmean authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opmean/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opmean/errors.hpp"

namespace opmean {

SimplexSolution simplex_max(const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b,
                            const std::vector<double>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    for (double bi : b)
        if (bi < 0.0) throw DomainError("simplex_max: negative rhs");

    // Tableau: m rows of [A | I | b], objective row holds reduced costs.
    const std::size_t total = n + m;
    std::vector<std::vector<double>> t(m, std::vector<double>(total + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) throw DimensionError("simplex_max: ragged matrix");
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1.0;
        t[i][total] = b[i];
    }
    std::vector<double> obj(total + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];  // minimize -c^T x
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    const double eps = 1e-11;
    const std::size_t max_iter = 2000 + 50 * total;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Bland: entering = smallest index with negative reduced cost.
        std::size_t enter = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (obj[j] < -eps) {
                enter = j;
                break;
            }
        }
        if (enter == total) {
            SimplexSolution sol;
            sol.objective = obj[total];
            sol.x.assign(n, 0.0);
            for (std::size_t i = 0; i < m; ++i)
                if (basis[i] < n) sol.x[basis[i]] = t[i][total];
            // Dual prices sit in the objective row over the slack columns.
            sol.dual.assign(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) sol.dual[i] = obj[n + i];
            return sol;
        }
        // Ratio test; Bland tie-break on smallest basis index.
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > eps) {
                const double ratio = t[i][total] / t[i][enter];
                if (ratio < best_ratio - eps ||
                    (ratio < best_ratio + eps &&
                     (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) {
            SimplexSolution sol;
            sol.bounded = false;
            return sol;
        }
        // Pivot.
        const double piv = t[leave][enter];
        for (double& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
        }
        const double fo = obj[enter];
        if (fo != 0.0)
            for (std::size_t j = 0; j <= total; ++j) obj[j] -= fo * t[leave][j];
        basis[leave] = enter;
    }
    throw ConvergenceError("simplex_max: iteration cap reached");
}

GameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff) {
    const std::size_t m = payoff.size();  // rows (minimizer)
    if (m == 0) throw DimensionError("solve_matrix_game: no rows");
    const std::size_t n = payoff.front().size();  // cols (maximizer)
    if (n == 0) throw DimensionError("solve_matrix_game: no columns");

    double lo = 0.0;
    for (const auto& row : payoff) {
        if (row.size() != n) throw DimensionError("solve_matrix_game: ragged payoff");
        for (double v : row) lo = std::min(lo, v);
    }
    const double shift = 1.0 - lo;  // all entries >= 1 after the shift

    // LP over the minimizer's scaled strategy u >= 0:
    //   max sum_x u_x   s.t.  sum_x u_x C'[x][y] <= 1  for all y.
    // Optimal objective is 1/value'; dual prices give the maximizer.
    std::vector<std::vector<double>> a(n, std::vector<double>(m));
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < m; ++x) a[y][x] = payoff[x][y] + shift;
    const std::vector<double> b(n, 1.0);
    const std::vector<double> c(m, 1.0);
    const SimplexSolution sol = simplex_max(a, b, c);
    if (!sol.bounded || sol.objective <= 0.0)
        throw ConvergenceError("solve_matrix_game: degenerate game LP");

    GameSolution out;
    const double z = sol.objective;
    out.value = 1.0 / z - shift;
    out.row_strategy.assign(m, 0.0);
    for (std::size_t x = 0; x < m; ++x)
        out.row_strategy[x] = std::max(0.0, sol.x[x] / z);
    out.col_strategy.assign(n, 0.0);
    double cs = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
        out.col_strategy[y] = std::max(0.0, sol.dual[y]);
        cs += out.col_strategy[y];
    }
    if (cs <= 0.0) throw ConvergenceError("solve_matrix_game: vanishing dual");
    for (double& v : out.col_strategy) v /= cs;
    double rs = 0.0;
    for (double v : out.row_strategy) rs += v;
    if (rs > 0.0)
        for (double& v : out.row_strategy) v /= rs;
    return out;
}

}  // namespace opmean

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

#pragma once

#include <cstddef>
#include <vector>

namespace opmean {

/// Solution of the two-player zero-sum matrix game with payoff C (rows x,
/// columns y): value = max over column mixtures nu of min over rows x of
/// sum_y C[x][y] nu[y]. Solved by a self-contained dense simplex with
/// Bland's rule after the classic positivity shift; both optimal strategies
/// come out of one tableau.
struct GameSolution {
    double value = 0.0;
    std::vector<double> row_strategy;  // minimizer (over x)
    std::vector<double> col_strategy;  // maximizer (over y)
};

GameSolution solve_matrix_game(const std::vector<std::vector<double>>& payoff);

/// max c^T x subject to A x <= b, x >= 0, with b >= 0 (slack basis start).
/// Returns primal x and the dual prices of the row constraints.
struct SimplexSolution {
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> dual;
    bool bounded = true;
};

SimplexSolution simplex_max(const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b,
                            const std::vector<double>& c);

}  // namespace opmean

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

#include "opmean/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opmean/config.hpp"
#include "opmean/lp.hpp"
#include "opmean/means.hpp"

namespace opmean {

void ClassicalInstance::validate() const {
    if (g.size() != f.size())
        throw DimensionError("ClassicalInstance: row count of g must match f");
    const std::size_t ny = y_size();
    for (const auto& row : g)
        if (row.size() != ny) throw DimensionError("ClassicalInstance: ragged g");
    for (double v : f)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("ClassicalInstance: f entries must be finite and >= 0");
    for (const auto& row : g)
        for (double v : row)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw DomainError("ClassicalInstance: g entries must be finite and >= 0");
}

FeasibilityCertificate gm_feasibility(const ClassicalInstance& inst) {
    inst.validate();
    const double tol = config().lp_tol;
    const std::size_t nx = inst.x_size();
    const std::size_t ny = inst.y_size();
    if (ny == 0) throw DimensionError("gm_feasibility: empty Y");

    std::vector<std::size_t> supp_f;
    for (std::size_t x = 0; x < nx; ++x)
        if (inst.f[x] > 0.0) supp_f.push_back(x);

    FeasibilityCertificate cert;
    if (supp_f.empty()) {
        // No constraint: every measure works.
        cert.feasible = true;
        cert.measure.assign(ny, 1.0 / static_cast<double>(ny));
        cert.value = std::numeric_limits<double>::infinity();
        return cert;
    }

    // Columns with g(x,y) = 0 < f(x) would put a -inf coefficient into the
    // constraint for x; the conventions force nu(y) = 0, so drop the column
    // and remember one killer row per dropped column for the dual witness.
    std::vector<std::size_t> kept, killer;
    std::vector<std::size_t> dropped;
    for (std::size_t y = 0; y < ny; ++y) {
        std::size_t k = nx;
        for (std::size_t x : supp_f)
            if (inst.g[x][y] == 0.0) {
                k = x;
                break;
            }
        if (k == nx) {
            kept.push_back(y);
        } else {
            dropped.push_back(y);
            killer.push_back(k);
        }
    }

    if (kept.empty()) {
        // Every column is forced to zero weight: infeasible, witnessed by
        // spreading mass over the killer rows (each column sum is -inf).
        cert.feasible = false;
        cert.dual_witness.assign(nx, 0.0);
        for (std::size_t k : killer) cert.dual_witness[k] += 1.0;
        double s = 0.0;
        for (double v : cert.dual_witness) s += v;
        for (double& v : cert.dual_witness) v /= s;
        cert.violated_x = killer.front();
        cert.value = -std::numeric_limits<double>::infinity();
        return cert;
    }

    // Matrix game over the finite coefficients c(x,y) = log(g(x,y)/f(x)).
    std::vector<std::vector<double>> payoff(supp_f.size(),
                                            std::vector<double>(kept.size()));
    for (std::size_t i = 0; i < supp_f.size(); ++i)
        for (std::size_t j = 0; j < kept.size(); ++j)
            payoff[i][j] =
                std::log(inst.g[supp_f[i]][kept[j]]) - std::log(inst.f[supp_f[i]]);
    const GameSolution game = solve_matrix_game(payoff);
    cert.value = game.value;

    if (game.value >= -tol) {
        cert.feasible = true;
        cert.measure.assign(ny, 0.0);
        for (std::size_t j = 0; j < kept.size(); ++j)
            cert.measure[kept[j]] = game.col_strategy[j];
        return cert;
    }

    cert.feasible = false;
    // Most violated constraint at the optimal nu.
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_x = supp_f.front();
    for (std::size_t i = 0; i < supp_f.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < kept.size(); ++j)
            s += game.col_strategy[j] * payoff[i][j];
        if (s < worst) {
            worst = s;
            worst_x = supp_f[i];
        }
    }
    cert.violated_x = worst_x;

    // Dual witness over X. The game dual makes every kept column strictly
    // negative; dropped columns need some mass on their killer rows, mixed in
    // lightly enough to keep the kept columns negative.
    cert.dual_witness.assign(nx, 0.0);
    for (std::size_t i = 0; i < supp_f.size(); ++i)
        cert.dual_witness[supp_f[i]] = game.row_strategy[i];
    if (!dropped.empty()) {
        double mag = 0.0;
        for (std::size_t x : killer)
            for (std::size_t j = 0; j < kept.size(); ++j)
                mag = std::max(mag, std::abs(std::log(inst.g[x][kept[j]]) -
                                             std::log(inst.f[x])));
        const double beta =
            std::abs(game.value) / (4.0 * (mag + std::abs(game.value) + 1.0));
        for (double& v : cert.dual_witness) v *= (1.0 - beta);
        for (std::size_t k : killer)
            cert.dual_witness[k] += beta / static_cast<double>(killer.size());
    }
    return cert;
}

FeasibilityCertificate am_feasibility_single_n(const ClassicalInstance& inst,
                                               std::size_t n) {
    inst.validate();
    if (n == 0) throw DomainError("am_feasibility_single_n: n must be positive");
    const std::size_t nx = inst.x_size();
    const std::size_t ny = inst.y_size();
    double rows_d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        rows_d *= static_cast<double>(nx);
        if (rows_d > static_cast<double>(config().kron_cap))
            throw ResourceError("am_feasibility_single_n: |X|^n exceeds cap");
    }
    const std::size_t rows = static_cast<std::size_t>(rows_d);

    // Row xvec: sum_y mu(y) g_y^n(xvec) - f^n(xvec) >= 0, scaled to O(1).
    std::vector<std::vector<double>> payoff(rows, std::vector<double>(ny));
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t row = 0; row < rows; ++row) {
        double fn = 1.0;
        std::vector<double> gn(ny, 1.0);
        for (std::size_t pos = 0; pos < n; ++pos) {
            const std::size_t x = digits[pos];
            fn *= inst.f[x];
            for (std::size_t y = 0; y < ny; ++y) gn[y] *= inst.g[x][y];
        }
        double scale = fn;
        for (double v : gn) scale = std::max(scale, v);
        if (scale <= 0.0) scale = 1.0;
        for (std::size_t y = 0; y < ny; ++y)
            payoff[row][y] = (gn[y] - fn) / scale;
        // Increment the little-endian tuple counter.
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (++digits[pos] < nx) break;
            digits[pos] = 0;
        }
    }

    const GameSolution game = solve_matrix_game(payoff);
    FeasibilityCertificate cert;
    cert.value = game.value;
    if (game.value >= -config().lp_tol) {
        cert.feasible = true;
        cert.measure = game.col_strategy;
        return cert;
    }
    cert.feasible = false;
    cert.dual_witness = game.row_strategy;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_row = 0;
    for (std::size_t row = 0; row < rows; ++row) {
        double s = 0.0;
        for (std::size_t y = 0; y < ny; ++y)
            s += game.col_strategy[y] * payoff[row][y];
        if (s < worst) {
            worst = s;
            worst_row = row;
        }
    }
    cert.violated_x = worst_row;
    return cert;
}

std::vector<PsdMatrix> max_cr_commuting(
    const std::vector<PsdMatrix>& members,
    const std::vector<std::vector<double>>& sampled_nus) {
    std::vector<PsdMatrix> out;
    out.reserve(sampled_nus.size());
    for (const auto& nu : sampled_nus)
        out.push_back(commuting_gm(WeightedFamily(members, nu)));
    return out;
}

}  // namespace opmean

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

#include <doctest.h>

#include <cmath>

#include "opmean/classical.hpp"
#include "opmean/lp.hpp"
#include "opmean/membership.hpp"
#include "opmean/random.hpp"
#include "testutil.hpp"

using namespace opmean;
using namespace opmean::test;

namespace {

const ClassicalInstance kSkewed{{1.0}, {{0.01, 10.0}}};
const ClassicalInstance kInfeasible{{1.0, 1.0}, {{0.01, 10.0}, {10.0, 0.01}}};
const ClassicalInstance kUnique{{1.0, 1.0}, {{0.1, 10.0}, {10.0, 0.1}}};

bool gm_constraints_hold(const ClassicalInstance& inst,
                         const std::vector<double>& nu) {
    for (std::size_t x = 0; x < inst.x_size(); ++x) {
        if (inst.f[x] <= 0.0) continue;
        double lhs = 0.0;
        for (std::size_t y = 0; y < inst.y_size(); ++y) {
            if (nu[y] == 0.0) continue;
            if (inst.g[x][y] == 0.0) return false;
            lhs += nu[y] * std::log(inst.g[x][y]);
        }
        if (lhs < std::log(inst.f[x]) - 1e-9) return false;
    }
    return true;
}

bool am_constraints_hold(const ClassicalInstance& inst,
                         const std::vector<double>& mu, std::size_t n) {
    std::vector<std::size_t> digits(n, 0);
    const std::size_t rows = static_cast<std::size_t>(
        std::pow(static_cast<double>(inst.x_size()), static_cast<double>(n)));
    for (std::size_t row = 0; row < rows; ++row) {
        double fn = 1.0;
        std::vector<double> gn(inst.y_size(), 1.0);
        for (std::size_t pos = 0; pos < n; ++pos) {
            fn *= inst.f[digits[pos]];
            for (std::size_t y = 0; y < inst.y_size(); ++y)
                gn[y] *= inst.g[digits[pos]][y];
        }
        double rhs = 0.0;
        for (std::size_t y = 0; y < inst.y_size(); ++y) rhs += mu[y] * gn[y];
        if (fn > rhs + 1e-9 * std::max(1.0, fn)) return false;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (++digits[pos] < inst.x_size()) break;
            digits[pos] = 0;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("matrix game solver sanity") {
    // Matching pennies: value 0, both strategies uniform.
    const auto g = solve_matrix_game({{1.0, -1.0}, {-1.0, 1.0}});
    CHECK(g.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(g.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(g.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
    // Dominant column.
    const auto g2 = solve_matrix_game({{1.0, 3.0}, {2.0, 3.5}});
    CHECK(g2.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(g2.col_strategy[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("game strategies certify the value from both sides") {
    // The returned pair is a primal-dual certificate: the column strategy
    // guarantees at least the value against every row, the row strategy at
    // most the value against every column.
    Rng rng(43);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t m = 2 + rep % 3, n = 2 + (rep / 3) % 3;
        std::vector<std::vector<double>> payoff(m, std::vector<double>(n));
        for (auto& row : payoff)
            for (auto& v : row) v = rng.uniform(-5.0, 5.0);
        const auto sol = solve_matrix_game(payoff);
        double col_guarantee = 1e300, row_cap = -1e300;
        for (std::size_t x = 0; x < m; ++x) {
            double s = 0.0;
            for (std::size_t y = 0; y < n; ++y) s += sol.col_strategy[y] * payoff[x][y];
            col_guarantee = std::min(col_guarantee, s);
        }
        for (std::size_t y = 0; y < n; ++y) {
            double s = 0.0;
            for (std::size_t x = 0; x < m; ++x) s += sol.row_strategy[x] * payoff[x][y];
            row_cap = std::max(row_cap, s);
        }
        CHECK(col_guarantee == doctest::Approx(sol.value).epsilon(1e-8));
        CHECK(row_cap == doctest::Approx(sol.value).epsilon(1e-8));
        CHECK(col_guarantee <= row_cap + 1e-8);
    }
}

TEST_CASE("gm feasibility on the three reference instances") {
    SUBCASE("skewed single constraint") {
        const auto cert = gm_feasibility(kSkewed);
        REQUIRE(cert.feasible);
        CHECK(gm_constraints_hold(kSkewed, cert.measure));
        // Any nu with -2 nu1 + nu2 >= 0 (base-10 logs) works; the returned
        // one must satisfy it.
        CHECK(cert.measure[1] >= 2.0 * cert.measure[0] - 1e-9);
    }
    SUBCASE("crossing constraints are infeasible with a dual witness") {
        const auto cert = gm_feasibility(kInfeasible);
        REQUIRE(!cert.feasible);
        REQUIRE(cert.dual_witness.size() == 2);
        double worst = -1e300;
        for (std::size_t y = 0; y < 2; ++y) {
            double s = 0.0;
            for (std::size_t x = 0; x < 2; ++x)
                s += cert.dual_witness[x] *
                     std::log(kInfeasible.g[x][y] / kInfeasible.f[x]);
            worst = std::max(worst, s);
        }
        CHECK(worst < -1e-9);
        CHECK(cert.violated_x.has_value());
    }
    SUBCASE("unique balanced measure") {
        const auto cert = gm_feasibility(kUnique);
        REQUIRE(cert.feasible);
        CHECK(cert.measure[0] == doctest::Approx(0.5).epsilon(1e-7));
        CHECK(cert.measure[1] == doctest::Approx(0.5).epsilon(1e-7));
    }
}

TEST_CASE("gm feasibility zero-column preprocessing") {
    // g(x=0, y=0) = 0 with f(0) > 0 forces nu(0) = 0.
    const ClassicalInstance inst{{1.0, 0.5}, {{0.0, 3.0}, {5.0, 2.0}}};
    const auto cert = gm_feasibility(inst);
    REQUIRE(cert.feasible);
    CHECK(cert.measure[0] == 0.0);
    CHECK(gm_constraints_hold(inst, cert.measure));
    // All columns killed: infeasible with a -inf witness on every column.
    const ClassicalInstance dead{{1.0}, {{0.0, 0.0}}};
    const auto cert2 = gm_feasibility(dead);
    CHECK(!cert2.feasible);
    // f identically zero: vacuous.
    const ClassicalInstance vac{{0.0, 0.0}, {{0.0, 1.0}, {2.0, 0.0}}};
    CHECK(gm_feasibility(vac).feasible);
}

TEST_CASE("single-n arithmetic feasibility") {
    SUBCASE("n = 1 of the crossing instance is feasible at the midpoint") {
        const auto cert = am_feasibility_single_n(kInfeasible, 1);
        REQUIRE(cert.feasible);
        CHECK(cert.measure[0] == doctest::Approx(0.5).epsilon(1e-7));
        CHECK(am_constraints_hold(kInfeasible, cert.measure, 1));
    }
    SUBCASE("higher copy counts become infeasible") {
        // GM-infeasibility forces AM failure at some n; here it already
        // fails at n = 2 and stays infeasible through the sweep.
        CHECK(!am_feasibility_single_n(kInfeasible, 5).feasible);
        CHECK(am_feasibility_single_n(kInfeasible, 1).feasible);
        for (std::size_t n = 2; n <= 8; ++n)
            CHECK(!am_feasibility_single_n(kInfeasible, n).feasible);
    }
    SUBCASE("pointwise-min target is feasible at any n") {
        ClassicalInstance inst{{0.0, 0.0}, {{1.0, 3.0}, {4.0, 2.0}}};
        for (std::size_t x = 0; x < 2; ++x)
            inst.f[x] = std::min(inst.g[x][0], inst.g[x][1]);
        for (std::size_t n : {std::size_t{1}, std::size_t{3}}) {
            const auto cert = am_feasibility_single_n(inst, n);
            REQUIRE(cert.feasible);
            CHECK(am_constraints_hold(inst, cert.measure, n));
        }
    }
    SUBCASE("resource cap") {
        CHECK_THROWS_AS(am_feasibility_single_n(kInfeasible, 13), ResourceError);
    }
}

TEST_CASE("gm feasibility implies am feasibility with the same measure") {
    Rng rng(41);
    int feasible_seen = 0;
    for (int rep = 0; rep < 40; ++rep) {
        ClassicalInstance inst;
        const std::size_t nx = 2 + rep % 2, ny = 2 + (rep / 2) % 2;
        inst.f.resize(nx);
        inst.g.assign(nx, std::vector<double>(ny));
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t y = 0; y < ny; ++y)
                inst.g[x][y] = rng.uniform(0.05, 4.0);
            // Keep the target near the per-row geometric mean so both
            // outcomes appear in the sample.
            double gm = 1.0;
            for (std::size_t y = 0; y < ny; ++y)
                gm *= std::pow(inst.g[x][y], 1.0 / ny);
            inst.f[x] = gm * rng.uniform(0.7, 1.3);
        }
        const auto cert = gm_feasibility(inst);
        if (!cert.feasible) {
            // Dual soundness on every infeasible draw.
            double worst = -1e300;
            for (std::size_t y = 0; y < ny; ++y) {
                double s = 0.0;
                for (std::size_t x = 0; x < nx; ++x)
                    if (inst.f[x] > 0.0)
                        s += cert.dual_witness[x] * std::log(inst.g[x][y] / inst.f[x]);
                worst = std::max(worst, s);
            }
            CHECK(worst < -1e-9);
            continue;
        }
        ++feasible_seen;
        CHECK(gm_constraints_hold(inst, cert.measure));
        for (std::size_t n = 1; n <= 3; ++n)
            CHECK(am_constraints_hold(inst, cert.measure, n));
    }
    CHECK(feasible_seen > 0);
}

TEST_CASE("max C(R) portraits for commuting families") {
    const PsdMatrix s1 = psd_diag({0.25, 0.75});
    const PsdMatrix s2 = psd_diag({0.75, 0.25});
    SUBCASE("dirac weight returns the member") {
        const auto out = max_cr_commuting({s1, s2}, {{1.0, 0.0}});
        CHECK(max_abs_diff(out[0].mat(), s1.mat()) <= 1e-10);
    }
    SUBCASE("balanced weight returns the geometric-mean state") {
        const auto out = max_cr_commuting({s1, s2}, {{0.5, 0.5}});
        const double v = std::sqrt(3.0) / 4.0;
        CHECK(max_abs_diff(out[0].mat(), real_diag({v, v})) <= 1e-10);
    }
    SUBCASE("identical members are fixed points") {
        const auto out = max_cr_commuting({s1, s1}, {{0.3, 0.7}});
        CHECK(max_abs_diff(out[0].mat(), s1.mat()) <= 1e-10);
    }
    SUBCASE("portraits pass the weak sup-bound oracle at small n") {
        Rng rng(42);
        const auto out = max_cr_commuting({s1, s2}, {{0.5, 0.5}, {0.2, 0.8}});
        for (const auto& c : out)
            for (std::size_t n = 1; n <= 3; ++n)
                CHECK(sup_bound_oracle(c, {s1, s2}, n, 300, rng).holds);
    }
}

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

#include "opmean/exponents.hpp"

#include <cmath>

#include "opmean/config.hpp"
#include "opmean/means.hpp"
#include "opmean/parallel.hpp"

namespace opmean {

namespace {

void require_density(const PsdMatrix& a, const char* who) {
    if (std::abs(a.mat().trace().real() - 1.0) > 1e-9)
        throw PreconditionError(std::string(who) + ": input is not a density operator",
                                std::abs(a.mat().trace().real() - 1.0));
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

}  // namespace

std::pair<ExtReal, ExtReal> trivial_bounds(const std::vector<PsdMatrix>& null_set,
                                           const std::vector<PsdMatrix>& alt_set,
                                           double r) {
    if (null_set.empty() || alt_set.empty())
        throw DimensionError("trivial_bounds: empty hypothesis set");
    for (const auto& x : null_set) require_density(x, "trivial_bounds");
    for (const auto& x : alt_set) require_density(x, "trivial_bounds");
    ExtReal direct_upper = ExtReal::infinity();
    ExtReal sc_lower = ExtReal::neg_infinity();
    for (const auto& rho : null_set)
        for (const auto& sigma : alt_set) {
            const auto h = hoeffding(r, rho, sigma);
            if (h.value < direct_upper) direct_upper = h.value;
            const auto hs = hoeffding_star(r, rho, sigma);
            if (hs.value > sc_lower) sc_lower = hs.value;
        }
    return {direct_upper, sc_lower};
}

ExponentReport geometric_bounds_two(const std::pair<PsdMatrix, PsdMatrix>& null_pair,
                                    const std::pair<PsdMatrix, PsdMatrix>& alt_pair,
                                    double r, std::size_t grid) {
    if (grid < 2) throw DomainError("geometric_bounds_two: grid too small");
    const auto& [rho1, rho2] = null_pair;
    const auto& [sigma1, sigma2] = alt_pair;
    for (const auto* x : {&rho1, &rho2, &sigma1, &sigma2})
        require_density(*x, "geometric_bounds_two");

    ExponentReport report;
    report.r = r;
    report.st_grid = grid;

    const auto trivial = trivial_bounds({rho1, rho2}, {sigma1, sigma2}, r);
    report.trivial_direct_upper = trivial.first;
    report.trivial_sc_lower = trivial.second;

    std::vector<double> ts(grid);
    for (std::size_t i = 0; i < grid; ++i)
        ts[i] = static_cast<double>(i) / static_cast<double>(grid - 1);

    // Cache both KA mean families; every grid cell is independent after
    // that, so the sweep runs as a deterministic parallel map (results land
    // at fixed indices, the reduction is sequential).
    std::vector<PsdMatrix> sigma_means, rho_means;
    sigma_means.reserve(grid);
    rho_means.reserve(grid);
    for (double t : ts) sigma_means.push_back(ka_mean(sigma1, sigma2, t));
    for (double s : ts) rho_means.push_back(ka_mean(rho1, rho2, s));

    report.direct_grid_rows.assign(grid * grid, {0.0, 0.0, 0.0});
    std::vector<double> resolutions(grid * grid, 0.0);
    parallel_for(grid * grid, [&](std::size_t cell) {
        const std::size_t i = cell / grid, j = cell % grid;
        const auto h = hoeffding(r, rho_means[i], sigma_means[j]);
        report.direct_grid_rows[cell] = {ts[i], ts[j], h.value.raw()};
        resolutions[cell] = h.grid_resolution;
    });
    ExtReal direct = ExtReal::infinity();
    for (const auto& row : report.direct_grid_rows)
        if (ExtReal(row[2]) < direct) direct = ExtReal(row[2]);
    report.alpha_grid_resolution = resolutions.front();
    report.geometric_direct_upper = direct;

    ExtReal sc = ExtReal::neg_infinity();
    for (const auto& rho : {rho1, rho2})
        for (std::size_t j = 0; j < grid; ++j) {
            const auto hs = hoeffding_star(r, rho, sigma_means[j]);
            if (hs.value > sc) sc = hs.value;
        }
    report.geometric_sc_lower = sc;

    // Sampled convex hull of the alternatives (20 points): replacing the
    // alternative set by mixtures may only raise the trivial sc bound.
    ExtReal hull = ExtReal::neg_infinity();
    for (int i = 0; i < 20; ++i) {
        const double u = static_cast<double>(i) / 19.0;
        Mat mix = sigma1.mat();
        mix *= complexd(u);
        Mat other = sigma2.mat();
        other *= complexd(1.0 - u);
        mix += other;
        const PsdMatrix sigma_mix = PsdMatrix::trusted(std::move(mix));
        for (const auto& rho : {rho1, rho2}) {
            const auto hs = hoeffding_star(r, rho, sigma_mix);
            if (hs.value > hull) hull = hs.value;
        }
    }
    report.convex_hull_sc = hull;
    return report;
}

AppendixAChain appendix_a_report(int k, double r) {
    if (k < 1 || k > 12) throw DomainError("appendix_a_report: k must be in [1,12]");
    const double kd = k * std::log(2.0 / std::sqrt(3.0));
    if (!(r > kd))
        throw PreconditionError("appendix_a_report: r must exceed k log(2/sqrt(3))",
                                kd - r);

    AppendixAChain chain;
    chain.k = k;
    chain.r = r;
    chain.r_minus_kd = r - kd;

    // Type classes by the number m of zeros in the k-copy string; binomial
    // multiplicities keep everything at k+1 points.
    const int m = k + 1;
    std::vector<double> w(m), rho(m), s1(m), s2(m);
    for (int i = 0; i < m; ++i) {
        w[i] = binom(k, i);
        rho[i] = std::pow(0.5, k);
        s1[i] = std::pow(0.25, i) * std::pow(0.75, k - i);
        s2[i] = std::pow(0.75, i) * std::pow(0.25, k - i);
    }

    const WeightedPmfPair pair1{w, rho, s1};
    const WeightedPmfPair pair2{w, rho, s2};
    chain.trivial_sc = std::max(classical_hoeffding_star(r, pair1).value.raw(),
                                classical_hoeffding_star(r, pair2).value.raw());

    // Geometric bound: sup over the t grid of H*_r against the pointwise
    // geometric mean of the two alternatives; t = 1/2 included exactly.
    double best_geo = -1e300;
    for (int i = 0; i <= 100; ++i) {
        const double t = static_cast<double>(i) / 100.0;
        std::vector<double> gm(m);
        for (int x = 0; x < m; ++x)
            gm[x] = std::pow(s1[x], t) * std::pow(s2[x], 1.0 - t);
        const double v = classical_hoeffding_star(r, {w, rho, gm}).value.raw();
        if (v > best_geo) {
            best_geo = v;
            chain.geometric_best_t = t;
        }
    }
    chain.geometric_sc = best_geo;

    // Mixture at the optimal t = 1/2.
    std::vector<double> mix(m);
    for (int x = 0; x < m; ++x) mix[x] = 0.5 * (s1[x] + s2[x]);
    const WeightedPmfPair mix_pair{w, rho, mix};
    chain.mixture_sc = classical_hoeffding_star(r, mix_pair).value.raw();
    chain.d_infinity = classical_dmax(mix_pair).raw();

    // r_inf of the mixture pair: the argmax ratio classes carry relative
    // tie-tolerance 1e-9, summed with their binomial weights.
    double best_ratio = 0.0;
    for (int x = 0; x < m; ++x) best_ratio = std::max(best_ratio, rho[x] / mix[x]);
    double mass = 0.0;
    for (int x = 0; x < m; ++x)
        if (rho[x] / mix[x] >= best_ratio * (1.0 - 1e-9)) mass += w[x] * mix[x];
    chain.r_infinity = -std::log(mass);

    chain.mixture_threshold =
        k % 2 == 0 ? k * std::log(4.0 / std::sqrt(3.0)) - std::log(binom(k, k / 2))
                   : 0.0;
    chain.mixture_strict_expected =
        (k % 2 == 1) || (r < chain.mixture_threshold);
    return chain;
}

}  // namespace opmean

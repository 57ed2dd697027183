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

#include <array>
#include <utility>
#include <vector>

#include "opmean/divergences.hpp"
#include "opmean/matcore.hpp"

namespace opmean {

/// Error-exponent bound report for a 2-vs-2 instance. All suprema/infima
/// over s, t are grid based with the resolution recorded; an inf over a grid
/// is an upper bound on the true inf and a sup over a grid is a lower bound
/// on the true sup, which are the conservative directions for both bounds.
struct ExponentReport {
    double r = 0.0;
    ExtReal trivial_direct_upper;
    ExtReal geometric_direct_upper;
    ExtReal trivial_sc_lower;
    ExtReal geometric_sc_lower;
    ExtReal convex_hull_sc;
    std::size_t st_grid = 0;            // points per s/t axis
    double alpha_grid_resolution = 0.0;  // from the Hoeffding layer
    // One row per (s,t) cell of the direct-bound sweep (s, t, value).
    std::vector<std::array<double, 3>> direct_grid_rows;
};

/// Worst-case pairwise single-copy bounds: direct_upper = min over pairs of
/// the Hoeffding divergence, sc_lower = max over pairs of the anti-divergence.
/// Inputs must be density operators (trace 1 within 1e-9).
std::pair<ExtReal, ExtReal> trivial_bounds(const std::vector<PsdMatrix>& null_set,
                                           const std::vector<PsdMatrix>& alt_set,
                                           double r);

/// Kubo-Ando-improved bounds for two states per hypothesis:
/// direct: inf over the (s,t) grid of H_r(rho2 #_s rho1 || sigma2 #_t sigma1);
/// strong converse: max_i sup over the t grid of H*_r(rho_i || sigma2 #_t sigma1).
/// Also evaluates the trivial bounds and a sampled convex-hull sc bound.
ExponentReport geometric_bounds_two(const std::pair<PsdMatrix, PsdMatrix>& null_pair,
                                    const std::pair<PsdMatrix, PsdMatrix>& alt_pair,
                                    double r, std::size_t grid = 101);

/// The strict-inequality chain of the commuting 2-alternative example
/// (rho = (1/2,1/2), sigma_1 = (1/4,3/4), sigma_2 = (3/4,1/4), k copies):
///   (i)  max_j H*_r(rho^k || sigma_j^k)             — trivial sc bound
///   (ii) r - k log(2/sqrt 3)                        — relative-entropy value
///   (iii) sup_t H*_r(rho^k || gm_t(sigma_1^k, sigma_2^k))  — geometric bound
///   (iv) H*_r(rho^k || (sigma_1^k + sigma_2^k)/2)   — mixture at t = 1/2
/// where (iv) is strict exactly when k is odd, or k is even and
/// r < k log(4/sqrt 3) - log C(k, k/2). Computed over type classes with
/// binomial weights; k <= 12; requires r > k log(2/sqrt 3).
struct AppendixAChain {
    int k = 1;
    double r = 0.0;
    double trivial_sc = 0.0;       // (i)
    double r_minus_kd = 0.0;       // (ii)
    double geometric_sc = 0.0;     // (iii)
    double mixture_sc = 0.0;       // (iv)
    bool mixture_strict_expected = false;  // (v)
    double mixture_threshold = 0.0;        // k log(4/sqrt3) - log C(k,k/2)
    double d_infinity = 0.0;       // of the k-copy mixture pair
    double r_infinity = 0.0;
    double geometric_best_t = 0.5;
};
AppendixAChain appendix_a_report(int k, double r);

}  // namespace opmean

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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opmean/matcore.hpp"
#include "opmean/random.hpp"

namespace opmean {

/// Verdict of the two-element Kubo-Ando membership criterion. The grid scan
/// is exact (up to tolerance) in both directions; witnesses from the
/// randomized oracles are best-effort: a found witness is a proof of
/// non-membership, an absent one proves nothing. `method` records which path
/// produced the verdict.
struct MembershipVerdict {
    bool member = false;
    // Feasible t-set hull(s); endpoints t in {0,1} are probed exactly and may
    // contribute isolated singletons because of the endpoint discontinuity.
    std::vector<std::pair<double, double>> t_intervals;
    int witness_n = 0;  // 0 = no witness found
    std::optional<PsdMatrix> witness_x;
    double witness_margin = 0.0;
    std::string method;
};

/// Scans phi(t) = lambda_min(A2 #_t A1 - C) on a uniform grid (default 2001
/// points, refined to 1e-6 near sign changes); member iff phi(t) >= -1e-9
/// somewhere. On non-membership a violation witness X with
/// Tr C^n X > max(Tr A1^n X, Tr A2^n X) is searched at small n.
MembershipVerdict ka_membership(const PsdMatrix& c, const PsdMatrix& a1,
                                const PsdMatrix& a2, std::size_t grid_points = 2001,
                                std::uint64_t witness_seed = 1);

/// Maximizes mu |-> lambda_min(sum_y mu(y) A_y^n - C^n) over the simplex.
/// Two-element families use golden-section on the concave profile (exact to
/// 1e-10); larger families use projected supergradient ascent (2000
/// iterations, diminishing steps). Feasible iff the optimum >= -1e-8.
struct AmFeasibility {
    bool feasible = false;
    std::vector<double> mu;
    double max_lambda_min = 0.0;
};
AmFeasibility am_feasibility_quantum(const PsdMatrix& c,
                                     const std::vector<PsdMatrix>& family,
                                     std::size_t n);

/// Randomized check of the weak geometric bound
/// Tr C^n X <= (Tr A1^n X)^t (Tr A2^n X)^{1-t} over sampled PSD X
/// (Wishart-style rank-1 plus structured candidates). A failure is a proof;
/// a pass is evidence only.
struct OracleReport {
    bool holds = true;
    double worst_margin = 0.0;  // min over X of rhs - lhs (scaled)
    std::optional<PsdMatrix> worst_x;
};
OracleReport weak_geometric_oracle(const PsdMatrix& c, const PsdMatrix& a1,
                                   const PsdMatrix& a2, double t, std::size_t n,
                                   std::size_t trials, Rng& rng);

/// Randomized check of Tr C^n T <= max_y Tr A_y^n T over sampled tests
/// T in [0, I] (clipped Wishart plus spectral projectors of the differences
/// C^n - A_y^n).
OracleReport sup_bound_oracle(const PsdMatrix& c,
                              const std::vector<PsdMatrix>& family, std::size_t n,
                              std::size_t trials, Rng& rng);

}  // namespace opmean

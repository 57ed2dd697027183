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

#include <functional>
#include <vector>

#include "opmean/extreal.hpp"
#include "opmean/matcore.hpp"

namespace opmean {

/// Divergence value in nats; +infinity exactly when the relevant support
/// condition fails.
struct DivergenceValue {
    ExtReal value;
};

struct HoeffdingResult {
    ExtReal value;
    // Maximizing alpha; alpha limits at the boundary are reported as 1 or 0,
    // and alpha -> infinity as maximizer_alpha_infinite.
    double maximizer_alpha = 1.0;
    bool maximizer_alpha_infinite = false;
    double grid_resolution = 0.0;
};

/// Petz-type Renyi divergence (1/(alpha-1)) log Tr A^alpha B^{1-alpha} for
/// alpha in (0,1); +infinity iff the supports are disjoint.
DivergenceValue petz_renyi(double alpha, const PsdMatrix& a, const PsdMatrix& b);

/// Sandwiched Renyi divergence for alpha > 1:
/// (1/(alpha-1)) log Tr (B^{(1-alpha)/2alpha} A B^{(1-alpha)/2alpha})^alpha
/// when supp A <= supp B, else +infinity.
DivergenceValue sandwiched_renyi(double alpha, const PsdMatrix& a, const PsdMatrix& b);

/// Umegaki relative entropy Tr A (log A - log B); +infinity on support failure.
DivergenceValue relative_entropy(const PsdMatrix& a, const PsdMatrix& b);

/// Max-relative entropy for commuting inputs: D_inf = log max_x rho(x)/sigma(x)
/// over supp sigma, the argmax set X_inf at relative tie tolerance 1e-9, and
/// r_inf = -log sum_{x in X_inf} sigma(x). PreconditionError on non-commuting
/// input.
struct MaxRelEntropyResult {
    DivergenceValue value;
    std::vector<std::size_t> argmax_set;  // joint eigenbasis indices
    ExtReal r_inf;
};
MaxRelEntropyResult max_relative_entropy(const PsdMatrix& a, const PsdMatrix& b);

/// Hoeffding divergence H_r = sup_{alpha in (0,1)} ((alpha-1)/alpha)(r - D_alpha)
/// with the Petz divergence. 512-point grid plus golden-section refinement;
/// the result is certified as a lower bound on the supremum.
HoeffdingResult hoeffding(double r, const PsdMatrix& a, const PsdMatrix& b);

/// Hoeffding anti-divergence H*_r = sup_{alpha>1} ((alpha-1)/alpha)(r - D*_alpha)
/// with the sandwiched divergence, parametrized by u = (alpha-1)/alpha in (0,1).
HoeffdingResult hoeffding_star(double r, const PsdMatrix& a, const PsdMatrix& b);

// ---------------------------------------------------------------------------
// Commuting (classical) layer over weighted supports. A point x carries a
// multiplicity w(x) >= 1, so k-fold i.i.d. powers of binary distributions can
// be handled through type classes without materializing 2^k entries.

struct WeightedPmfPair {
    std::vector<double> weight;  // multiplicities
    std::vector<double> p;       // null
    std::vector<double> q;       // alternative
};

ExtReal classical_renyi(double alpha, const WeightedPmfPair& pq);
ExtReal classical_kl(const WeightedPmfPair& pq);
ExtReal classical_dmax(const WeightedPmfPair& pq);
ExtReal classical_d0(const WeightedPmfPair& pq);  // -log q(supp p)
HoeffdingResult classical_hoeffding_star(double r, const WeightedPmfPair& pq);
HoeffdingResult classical_hoeffding(double r, const WeightedPmfPair& pq);

/// Shared supremum engine: maximize phi over (lo, hi) by a uniform grid plus
/// golden-section refinement around the best cell; boundary limit values are
/// supplied by the caller.
struct SupResult {
    double value;
    double arg;
    bool at_lo = false, at_hi = false;
};
SupResult grid_golden_max(const std::function<double(double)>& phi, double lo,
                          double hi, int grid_points, double tol);

}  // namespace opmean

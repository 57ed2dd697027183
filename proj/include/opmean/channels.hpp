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
#include <utility>
#include <vector>

#include "opmean/matcore.hpp"
#include "opmean/means.hpp"
#include "opmean/random.hpp"

namespace opmean {

/// Completely positive map between finite-dimensional systems, stored as its
/// Choi matrix. Index convention, fixed bit-exactly in the JSON schema:
/// the Choi matrix lives on (reference copy of the input) (x) (output), so
/// row index = i * dim_out + k with i an input index and k an output index,
/// and block (i,j) equals N(|i><j|).
class CpMap {
  public:
    CpMap(std::size_t dim_in, std::size_t dim_out, PsdMatrix choi);
    static CpMap from_kraus(const std::vector<Mat>& kraus_ops);
    static CpMap identity(std::size_t d);
    /// Completely depolarizing map (1/dim_out) I Tr(.)
    static CpMap depolarizing(std::size_t dim_in, std::size_t dim_out);
    /// Replacer A Tr(.)
    static CpMap replacer(const PsdMatrix& a, std::size_t dim_in);

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const Mat& choi() const { return choi_; }

    Mat apply(const Mat& rho) const;
    /// Kraus operators from the Choi spectral decomposition.
    std::vector<Mat> kraus() const;
    bool is_trace_preserving(double tol = 1e-9) const;

  private:
    std::size_t dim_in_, dim_out_;
    Mat choi_;
};

CpMap compose(const CpMap& f, const CpMap& e);  // f after e
CpMap tensor(const CpMap& e, const CpMap& f);

/// CP order: N <=_CP M iff Choi(M) - Choi(N) is PSD. Returns the verdict at
/// tolerance 1e-9 together with lambda_min(Choi(M) - Choi(N)).
std::pair<bool, double> cp_leq(const CpMap& n, const CpMap& m);

/// Kubo-Ando geometric mean of channels: Choi(result) =
/// ka_mean(Choi(N), Choi(M), t), i.e. M #_t N with weight t on N.
CpMap channel_ka_mean(const CpMap& n, const CpMap& m, double t);

/// Superoperator perspective: the operator perspective of the Choi matrices
/// with the epsilon-regularization realized as N + eps * (completely
/// depolarizing), i.e. Choi + (eps/dim_out) I.
CpMap superop_perspective(const ScalarFn& f, const CpMap& n, const CpMap& m);

/// Consistency report for the parallel-strategy discrimination bound: if
/// some t gives E <=_CP N2 #_t N1, every sampled n-copy parallel strategy
/// (phi, T) must satisfy Tr T (id (x) E^n) phi <= max_y Tr T (id (x) N_y^n) phi;
/// a sampled violation refutes every t.
struct DiscriminationReport {
    bool cp_bound_holds = false;          // item (5): some t works
    double best_t = 0.0;
    double cp_margin = 0.0;               // lambda_min at the best t
    bool strategies_hold = true;          // item (2) over the samples
    double worst_strategy_margin = 0.0;   // min over samples of max_y - E
    bool consistent = true;
};
DiscriminationReport discrimination_equivalence_check(const CpMap& e,
                                                      const CpMap& n1,
                                                      const CpMap& n2,
                                                      std::size_t n,
                                                      std::size_t trials, Rng& rng);

}  // namespace opmean

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

#include <optional>
#include <vector>

#include "opmean/matcore.hpp"

namespace opmean {

/// Fully commutative instance: a nonnegative target vector f over a finite X
/// and a nonnegative matrix g over X x Y (row index x, column index y).
struct ClassicalInstance {
    std::vector<double> f;
    std::vector<std::vector<double>> g;

    std::size_t x_size() const { return f.size(); }
    std::size_t y_size() const { return g.empty() ? 0 : g.front().size(); }
    void validate() const;
};

struct FeasibilityCertificate {
    bool feasible = false;
    // Probability vector over Y when feasible.
    std::vector<double> measure;
    // A most-violated row index when infeasible (flattened over X^n for the
    // multi-copy variant).
    std::optional<std::size_t> violated_x;
    // Probability vector over X (supp f) certifying infeasibility:
    // max_y sum_x r(x) log(g(x,y)/f(x)) < -tol.
    std::vector<double> dual_witness;
    // Optimal game value (slack of the tightest constraint).
    double value = 0.0;
};

/// Decides whether some probability measure nu over Y satisfies
/// f(x) <= prod_y g(x,y)^{nu(y)} for all x, with log 0 = -inf conventions:
/// any y with g(x,y) = 0 < f(x) is forced to nu(y) = 0 up front.
FeasibilityCertificate gm_feasibility(const ClassicalInstance& inst);

/// Decides existence of a probability measure mu over Y with
/// f^{(x) n}(xvec) <= sum_y mu(y) g_y^{(x) n}(xvec) for all xvec in X^n,
/// by an LP with |X|^n constraints (rows scaled to unit magnitude).
FeasibilityCertificate am_feasibility_single_n(const ClassicalInstance& inst,
                                               std::size_t n);

/// Sampled portrait of max C(R) for a commuting family: the weighted
/// geometric mean for each sampled probability vector.
std::vector<PsdMatrix> max_cr_commuting(
    const std::vector<PsdMatrix>& members,
    const std::vector<std::vector<double>>& sampled_nus);

}  // namespace opmean

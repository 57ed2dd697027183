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

namespace opmean {

// Global numerical knobs. A single snapshot is taken at startup (the CLI may
// override defaults from flags before any computation); afterwards the
// configuration is read-only, so concurrent readers are safe.
struct Config {
    // PSD admission: smallest eigenvalue >= -psd_tol relative to the largest
    // eigenvalue magnitude.
    double psd_tol = 1e-10;
    // Relative eigenvalue cutoff defining "support" everywhere: an eigenvalue
    // counts as zero iff it is <= eig_zero_tol * lambda_max.
    double eig_zero_tol = 1e-10;
    // Frobenius tolerance certifying convergence of the epsilon-limit in the
    // operator perspective.
    double persp_tol = 1e-9;
    // Frobenius commutator norm below which a family counts as commuting.
    double commute_tol = 1e-8;
    // Simplex feasibility tolerance.
    double lp_tol = 1e-9;
    // Hard cap on the dimension of tensor powers.
    std::size_t kron_cap = 4096;
    // Worker threads for grid sweeps; 0 = hardware concurrency.
    std::size_t threads = 0;
};

// Mutable until the first computation; callers that change it later get what
// they deserve.
Config& config();

}  // namespace opmean

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

#include <cmath>
#include <vector>

#include "opmean/matcore.hpp"
#include "opmean/matrix.hpp"

namespace opmean::test {

inline Mat real_diag(std::vector<double> d) { return Mat::diag(d); }

inline PsdMatrix psd_diag(std::vector<double> d) {
    return PsdMatrix::trusted(Mat::diag(d));
}

// |psi><psi| for psi = (1,1)/sqrt(2), the recurring rank-1 fixture.
inline PsdMatrix plus_projector() {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<complexd> psi = {complexd(s), complexd(s)};
    return PsdMatrix::trusted(Mat::outer(psi));
}

inline std::vector<complexd> plus_vector() {
    const double s = 1.0 / std::sqrt(2.0);
    return {complexd(s), complexd(s)};
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).max_abs(); }

}  // namespace opmean::test

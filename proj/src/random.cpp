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

#include "opmean/random.hpp"

#include <cmath>

namespace opmean {

std::vector<complexd> Rng::gaussian_vector(std::size_t n) {
    std::vector<complexd> v(n);
    for (auto& x : v) x = cgauss();
    return v;
}

Mat Rng::gaussian_matrix(std::size_t rows, std::size_t cols) {
    Mat g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = cgauss();
    return g;
}

Mat Rng::hermitian(std::size_t n, double scale) {
    Mat g = gaussian_matrix(n, n);
    Mat h = g + g.adjoint();
    h *= complexd(0.5 * scale);
    return h;
}

PsdMatrix Rng::psd(std::size_t n, std::size_t rank) {
    if (rank == 0) rank = n;
    const Mat g = gaussian_matrix(n, rank);
    Mat w = g * g.adjoint();
    w *= complexd(1.0 / static_cast<double>(n));
    return PsdMatrix::trusted(std::move(w));
}

PsdMatrix Rng::positive_definite(std::size_t n, double floor) {
    Mat w = psd(n).mat();
    for (std::size_t i = 0; i < n; ++i) w(i, i) += floor;
    return PsdMatrix::trusted(std::move(w));
}

PsdMatrix Rng::density(std::size_t n, std::size_t rank) {
    Mat w = psd(n, rank).mat();
    const double tr = w.trace().real();
    w *= complexd(1.0 / tr);
    return PsdMatrix::trusted(std::move(w));
}

Mat Rng::unitary(std::size_t n) {
    // Gram-Schmidt on Gaussian columns; fine at desk scale.
    Mat g = gaussian_matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            complexd proj = 0.0;
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

Mat Rng::projection(std::size_t n, std::size_t k) {
    const Mat u = unitary(n);
    Mat p(n, n);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) += u(i, c) * std::conj(u(j, c));
    p.hermitize();
    return p;
}

std::vector<double> Rng::prob_vector(std::size_t m) {
    std::vector<double> w(m);
    double s = 0.0;
    for (auto& x : w) {
        x = -std::log(uniform(1e-12, 1.0));
        s += x;
    }
    for (auto& x : w) x /= s;
    return w;
}

}  // namespace opmean

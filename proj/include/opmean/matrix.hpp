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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "opmean/errors.hpp"

namespace opmean {

using complexd = std::complex<double>;

// Dense complex matrix, row-major. Everything here is desk scale (dims up to
// a few hundred), so plain O(n^3) kernels are ample.
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<complexd> data);
    // Square matrix from nested initializer list (tests, small fixtures).
    Mat(std::initializer_list<std::initializer_list<complexd>> rows);

    static Mat identity(std::size_t n);
    static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat diag(std::span<const double> entries);
    static Mat column(std::span<const complexd> v);
    // vv^* for a (not necessarily normalized) vector.
    static Mat outer(std::span<const complexd> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    complexd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    std::span<const complexd> data() const { return a_; }
    std::span<complexd> data() { return a_; }

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(complexd s);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, complexd s) { return a *= s; }
    friend Mat operator*(complexd s, Mat a) { return a *= s; }
    friend Mat operator*(const Mat& a, const Mat& b);

    Mat adjoint() const;
    Mat transpose() const;
    Mat conjugate() const;

    complexd trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    // Distance from the nearest Hermitian matrix, max_ij |a_ij - conj(a_ji)|.
    double hermiticity_defect() const;
    // In-place (M + M^*)/2 with real diagonal.
    void hermitize();

    std::vector<complexd> apply(std::span<const complexd> v) const;
    // v^* M v; real part only (callers pass Hermitian M).
    double quadratic_form(std::span<const complexd> v) const;

    // W^* M W for a rows x k basis matrix W.
    Mat compress(const Mat& w) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<complexd> a_;
};

Mat kron(const Mat& a, const Mat& b);
Mat direct_sum(std::span<const Mat> blocks);
inline Mat direct_sum(const Mat& a, const Mat& b) {
    const Mat blocks[] = {a, b};
    return direct_sum(blocks);
}

// n-fold tensor power; refuses results with dimension beyond the configured
// cap (kron_cap).
Mat kron_power(const Mat& a, std::size_t n);

// Partial trace of an operator on C^{d1} (x) C^{d2}; `which` = 1 traces out
// the first factor, 2 the second.
Mat partial_trace(const Mat& m, std::size_t d1, std::size_t d2, int which);

complexd inner(std::span<const complexd> x, std::span<const complexd> y);
double norm2(std::span<const complexd> v);

/// Tr(A B) in O(n^2), no product matrix.
complexd trace_product(const Mat& a, const Mat& b);

}  // namespace opmean

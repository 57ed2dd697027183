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

#include "opmean/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "opmean/config.hpp"

namespace opmean {

Config& config() {
    static Config cfg;
    return cfg;
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<complexd> data)
    : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != rows_ * cols_)
        throw DimensionError("Mat: data size does not match shape");
}

Mat::Mat(std::initializer_list<std::initializer_list<complexd>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("Mat: ragged initializer");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(std::span<const double> entries) {
    Mat m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

Mat Mat::column(std::span<const complexd> v) {
    Mat m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Mat Mat::outer(std::span<const complexd> v) {
    Mat m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

Mat& Mat::operator+=(const Mat& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("Mat: shape mismatch in +=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("Mat: shape mismatch in -=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

Mat& Mat::operator*=(complexd s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionError("Mat: shape mismatch in *");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const complexd aik = a(i, k);
            if (aik == complexd(0.0)) continue;
            const complexd* brow = &b.a_[k * b.cols_];
            complexd* crow = &c.a_[i * c.cols_];
            for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Mat Mat::adjoint() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Mat Mat::transpose() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Mat Mat::conjugate() const {
    Mat m = *this;
    for (auto& x : m.a_) x = std::conj(x);
    return m;
}

complexd Mat::trace() const {
    if (!is_square()) throw DimensionError("Mat: trace of non-square matrix");
    complexd t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Mat::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

double Mat::hermiticity_defect() const {
    if (!is_square()) throw DimensionError("Mat: hermiticity of non-square matrix");
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

void Mat::hermitize() {
    if (!is_square()) throw DimensionError("Mat: hermitize non-square matrix");
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, i) = complexd((*this)(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < cols_; ++j) {
            const complexd avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = avg;
            (*this)(j, i) = std::conj(avg);
        }
    }
}

std::vector<complexd> Mat::apply(std::span<const complexd> v) const {
    if (v.size() != cols_) throw DimensionError("Mat: apply with wrong vector size");
    std::vector<complexd> out(rows_, complexd(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        complexd s = 0.0;
        const complexd* row = &a_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) s += row[j] * v[j];
        out[i] = s;
    }
    return out;
}

double Mat::quadratic_form(std::span<const complexd> v) const {
    const auto mv = apply(v);
    complexd s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * mv[i];
    return s.real();
}

Mat Mat::compress(const Mat& w) const {
    return w.adjoint() * (*this) * w;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complexd aij = a(i, j);
            if (aij == complexd(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

Mat direct_sum(std::span<const Mat> blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat m(r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(ro + i, co + j) = b(i, j);
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

Mat kron_power(const Mat& a, std::size_t n) {
    if (!a.is_square()) throw DimensionError("kron_power: non-square matrix");
    if (n == 0) return Mat::identity(1);
    double dim = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        dim *= static_cast<double>(a.rows());
        if (dim > static_cast<double>(config().kron_cap))
            throw ResourceError("kron_power: dimension cap exceeded");
    }
    Mat out = a;
    for (std::size_t i = 1; i < n; ++i) out = kron(out, a);
    return out;
}

Mat partial_trace(const Mat& m, std::size_t d1, std::size_t d2, int which) {
    if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
        throw DimensionError("partial_trace: dims inconsistent with matrix");
    if (which == 1) {
        Mat out(d2, d2);
        for (std::size_t k = 0; k < d2; ++k)
            for (std::size_t l = 0; l < d2; ++l) {
                complexd s = 0.0;
                for (std::size_t i = 0; i < d1; ++i) s += m(i * d2 + k, i * d2 + l);
                out(k, l) = s;
            }
        return out;
    }
    if (which == 2) {
        Mat out(d1, d1);
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j) {
                complexd s = 0.0;
                for (std::size_t k = 0; k < d2; ++k) s += m(i * d2 + k, j * d2 + k);
                out(i, j) = s;
            }
        return out;
    }
    throw DomainError("partial_trace: which must be 1 or 2");
}

complexd inner(std::span<const complexd> x, std::span<const complexd> y) {
    if (x.size() != y.size()) throw DimensionError("inner: length mismatch");
    complexd s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm2(std::span<const complexd> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

complexd trace_product(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionError("trace_product: shape mismatch");
    complexd s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
    return s;
}

}  // namespace opmean

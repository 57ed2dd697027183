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

#include "opmean/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "opmean/config.hpp"

namespace opmean {

PsdMatrix::PsdMatrix(Mat m, Trusted) : m_(std::move(m)) {
    if (!m_.is_square()) throw DimensionError("PsdMatrix: non-square matrix");
    m_.hermitize();
}

PsdMatrix::PsdMatrix(Mat m) : PsdMatrix(std::move(m), Trusted{}) {
    const auto sd = eigh(m_);
    const double lo = sd.eigenvalues.front();
    double hi = 0.0;
    for (double v : sd.eigenvalues) hi = std::max(hi, std::abs(v));
    if (lo < -config().psd_tol * std::max(1.0, hi))
        throw DomainError("PsdMatrix: matrix is not PSD within tolerance");
}

PsdMatrix PsdMatrix::trusted(Mat m) { return PsdMatrix(std::move(m), Trusted{}); }

namespace {

constexpr int kMaxSweeps = 100;

// One cyclic Jacobi sweep; returns remaining off-diagonal Frobenius mass.
double jacobi_sweep(Mat& a, Mat& v) {
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const complexd apq = a(p, q);
            const double r = std::abs(apq);
            if (r == 0.0) continue;
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            // Skip rotations that cannot move anything at double precision.
            if (r <= 1e-300 ||
                r <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
                continue;
            }
            const complexd phase = apq / r;  // e^{i phi}
            const double tau = (aqq - app) / (2.0 * r);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            // Unitary G: G(p,p)=c, G(p,q)=s, G(q,p)=-s conj(phase),
            // G(q,q)=c conj(phase); A <- G^* A G annihilates a(p,q).
            for (std::size_t k = 0; k < n; ++k) {  // columns: A <- A G
                const complexd akp = a(k, p), akq = a(k, q);
                a(k, p) = c * akp - s * std::conj(phase) * akq;
                a(k, q) = s * akp + c * std::conj(phase) * akq;
            }
            for (std::size_t k = 0; k < n; ++k) {  // rows: A <- G^* A
                const complexd apk = a(p, k), aqk = a(q, k);
                a(p, k) = c * apk - s * phase * aqk;
                a(q, k) = s * apk + c * phase * aqk;
            }
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = complexd(a(p, p).real(), 0.0);
            a(q, q) = complexd(a(q, q).real(), 0.0);
            for (std::size_t k = 0; k < n; ++k) {  // V <- V G
                const complexd vkp = v(k, p), vkq = v(k, q);
                v(k, p) = c * vkp - s * std::conj(phase) * vkq;
                v(k, q) = s * vkp + c * std::conj(phase) * vkq;
            }
        }
    }
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    return std::sqrt(2.0 * off);
}

}  // namespace

SpectralDecomposition eigh(const Mat& a_in) {
    if (!a_in.is_square()) throw DimensionError("eigh: non-square matrix");
    const std::size_t n = a_in.rows();
    Mat a = a_in;
    a.hermitize();
    Mat v = Mat::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());
    double off = 0.0;
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        off = jacobi_sweep(a, v);
        if (off <= 1e-14 * scale) converged = true;
    }
    if (!converged)
        throw ConvergenceError("eigh: Jacobi sweeps did not converge", off);

    SpectralDecomposition sd;
    sd.eigenvalues.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return diag[l] < diag[r]; });
    sd.eigenvectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sd.eigenvalues[j] = diag[order[j]];
        for (std::size_t i = 0; i < n; ++i) sd.eigenvectors(i, j) = v(i, order[j]);
    }
    return sd;
}

namespace {

Mat assemble(const SpectralDecomposition& sd, const std::vector<double>& vals) {
    const std::size_t n = vals.size();
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (vals[k] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const complexd vik = sd.eigenvectors(i, k) * vals[k];
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += vik * std::conj(sd.eigenvectors(j, k));
        }
    }
    out.hermitize();
    return out;
}

double support_cutoff(const std::vector<double>& eigenvalues) {
    double hi = 0.0;
    for (double v : eigenvalues) hi = std::max(hi, std::abs(v));
    return config().eig_zero_tol * hi;
}

}  // namespace

Mat mat_fn(const Mat& a, const std::function<double(double)>& f, double zero_value,
           double min_cut) {
    const auto sd = eigh(a);
    const double cut = std::max(support_cutoff(sd.eigenvalues), min_cut);
    std::vector<double> vals(sd.eigenvalues.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double lam = sd.eigenvalues[i];
        if (lam <= cut) {
            vals[i] = zero_value;
        } else {
            const double y = f(lam);
            if (!std::isfinite(y))
                throw DomainError("mat_fn: f undefined at a positive eigenvalue");
            vals[i] = y;
        }
    }
    return assemble(sd, vals);
}

Mat mat_fn_full(const Mat& a, const std::function<double(double)>& f) {
    const auto sd = eigh(a);
    std::vector<double> vals(sd.eigenvalues.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        vals[i] = f(sd.eigenvalues[i]);
        if (!std::isfinite(vals[i]))
            throw DomainError("mat_fn_full: f undefined at an eigenvalue");
    }
    return assemble(sd, vals);
}

Mat mat_pow(const Mat& a, double p, double min_cut) {
    return mat_fn(a, [p](double x) { return std::pow(x, p); }, 0.0, min_cut);
}

Mat support_proj(const Mat& a, double min_cut) {
    return mat_fn(a, [](double) { return 1.0; }, 0.0, min_cut);
}

Mat gen_inverse(const Mat& a, double min_cut) { return mat_pow(a, -1.0, min_cut); }

Mat acc_part(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || !a.is_square() || !b.is_square())
        throw DimensionError("acc_part: dimension mismatch");
    const Mat p = support_proj(b);
    Mat pc = Mat::identity(a.rows());
    pc -= p;
    const Mat core = pc * a * pc;
    // The compression inherits the support cutoff of A itself: entries of
    // core below A's support scale are projection rounding noise, not
    // spectrum, and must not be inverted.
    const double floor_a = config().eig_zero_tol * lambda_max(a);
    const Mat inv = gen_inverse(core, floor_a);
    Mat out = p * a * p - p * a * inv * a * p;
    out.hermitize();
    // Clean sub-support residue so the result's support is well-defined at
    // the global knob (an all-noise result collapses to exactly zero).
    out = mat_fn(out, [](double x) { return x; }, 0.0, floor_a);
    return out;
}

double lambda_min(const Mat& hermitian) { return eigh(hermitian).eigenvalues.front(); }

double lambda_max(const Mat& hermitian) { return eigh(hermitian).eigenvalues.back(); }

std::vector<complexd> min_eigvec(const Mat& hermitian) {
    const auto sd = eigh(hermitian);
    std::vector<complexd> v(hermitian.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = sd.eigenvectors(i, 0);
    return v;
}

double det_hermitian(const Mat& a) {
    double d = 1.0;
    for (double lam : eigh(a).eigenvalues) d *= lam;
    return d;
}

bool support_contained(const Mat& a, const Mat& b, double tol) {
    const Mat pa = support_proj(a);
    Mat qb = Mat::identity(b.rows());
    qb -= support_proj(b);
    // || (I - B0) A0 (I - B0) || as the containment defect.
    return lambda_max(qb * pa * qb) <= tol;
}

}  // namespace opmean

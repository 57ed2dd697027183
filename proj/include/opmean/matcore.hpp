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

#include "opmean/matrix.hpp"

namespace opmean {

/// Hermitian positive semi-definite matrix, the universal operand. The
/// constructor symmetrizes and checks PSD-ness within psd_tol (relative to
/// the largest eigenvalue magnitude). `trusted` skips the spectral check for
/// matrices that are PSD by construction.
class PsdMatrix {
  public:
    explicit PsdMatrix(Mat m);
    static PsdMatrix trusted(Mat m);

    std::size_t dim() const { return m_.rows(); }
    const Mat& mat() const { return m_; }
    operator const Mat&() const { return m_; }  // NOLINT: deliberate shorthand

  private:
    struct Trusted {};
    PsdMatrix(Mat m, Trusted);
    Mat m_;
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Mat eigenvectors;                 // unitary; columns match eigenvalues
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations
/// (iteration cap 100 sweeps). Throws ConvergenceError with the remaining
/// off-diagonal mass if the cap is hit.
SpectralDecomposition eigh(const Mat& a);

/// U f(lambda) U^*, with f applied to eigenvalues above the support cutoff
/// and `zero_value` substituted below it. The cutoff is eig_zero_tol relative
/// to lambda_max, floored by `min_cut`: compressions of a larger operand must
/// pass the original operand's scale here, or pure rounding noise would count
/// as support. Throws DomainError if f is undefined (NaN/inf) at a kept
/// eigenvalue.
Mat mat_fn(const Mat& a, const std::function<double(double)>& f, double zero_value,
           double min_cut = 0.0);

/// Plain Hermitian functional calculus U f(lambda) U^* with no support
/// cutoff; for maps like exp and log-of-definite where every eigenvalue is
/// meaningful, including tiny and negative ones.
Mat mat_fn_full(const Mat& a, const std::function<double(double)>& f);

/// A^p with support conventions: zero eigenvalues stay zero for every p
/// (in particular A^0 is the support projection and negative powers are
/// generalized inverses on the support).
Mat mat_pow(const Mat& a, double p, double min_cut = 0.0);

/// Projection onto the support of a PSD matrix.
Mat support_proj(const Mat& a, double min_cut = 0.0);

/// Generalized (Moore-Penrose on the support) inverse of a PSD matrix.
Mat gen_inverse(const Mat& a, double min_cut = 0.0);

/// Absolutely continuous part of A with respect to B: the largest X <= A
/// with supp X inside supp B, via the block formula
/// B0 A B0 - B0 A ((I-B0) A (I-B0))^{-1} A B0.
Mat acc_part(const Mat& a, const Mat& b);

double lambda_min(const Mat& hermitian);
double lambda_max(const Mat& hermitian);
/// Bottom eigenvector of a Hermitian matrix.
std::vector<complexd> min_eigvec(const Mat& hermitian);

/// Determinant of a Hermitian matrix via its spectrum.
double det_hermitian(const Mat& a);

/// True iff supp(a) is contained in supp(b), both PSD, decided via the
/// global eig_zero_tol support projections.
bool support_contained(const Mat& a, const Mat& b, double tol = 1e-8);

}  // namespace opmean

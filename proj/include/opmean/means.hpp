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
#include <string>
#include <vector>

#include "opmean/extreal.hpp"
#include "opmean/matcore.hpp"

namespace opmean {

/// Scalar function descriptor for operator perspectives: pointwise evaluator
/// on (0, inf) plus the declared limits f(0+) and of the transpose function
/// f~(x) = x f(1/x), i.e. f~(0+) = lim_{x->inf} f(x)/x.
struct ScalarFn {
    std::function<double(double)> eval;
    ExtReal limit_at_zero;
    ExtReal transpose_limit_at_zero;
    std::string label;

    static ScalarFn power(double t);  // x^t
    static ScalarFn log();
    static ScalarFn xlogx();
    static ScalarFn sqrt() { return power(0.5); }
    // Presets addressable by name: "pow:<t>", "log", "xlogx", "sqrt".
    static ScalarFn by_name(const std::string& name);
};

/// Finite indexed family of PSD matrices with a probability vector.
struct WeightedFamily {
    std::vector<PsdMatrix> members;
    std::vector<double> weights;

    WeightedFamily(std::vector<PsdMatrix> m, std::vector<double> w);
};

/// Default epsilon path 10^{-k}, k = 1..12.
std::vector<double> default_eps_path();

/// Operator perspective P_f(A, B) as the limit of
/// (B+eI)^{1/2} f((B+eI)^{-1/2}(A+eI)(B+eI)^{-1/2}) (B+eI)^{1/2}
/// along a descending epsilon path. Convergence is certified when two
/// consecutive iterates agree to persp_tol in Frobenius norm; otherwise a
/// ConvergenceError with the last residual is thrown (the limit need not
/// exist when none of the support conditions hold).
Mat perspective(const ScalarFn& f, const Mat& a, const Mat& b,
                const std::vector<double>& eps_path = default_eps_path());

/// t-weighted Kubo-Ando geometric mean B #_t A (weight t on A), computed
/// from the closed form on absolutely continuous parts so that singular
/// inputs are exact; endpoints t in {0,1} return B resp. A exactly. Total on
/// PSD inputs.
PsdMatrix ka_mean(const PsdMatrix& a, const PsdMatrix& b, double t);

enum class AltMeanKind { G, Gtilde, Ghat, LogEuclid };

/// The rival tensor-multiplicative geometric means:
///   G:        (A^{t/2z} B^{(1-t)/z} A^{t/2z})^z
///   Gtilde:   (B^{(1-t)/2z} A^{t/z} B^{(1-t)/2z})^z
///   Ghat:     (B^{1/z} #_t A^{1/z})^z
///   LogEuclid: exp(t log A + (1-t) log B)   (Ghat at z = +inf)
/// Powers follow the support conventions; LogEuclid demands positive
/// definite inputs (DomainError otherwise).
PsdMatrix alt_mean(AltMeanKind kind, const PsdMatrix& a, const PsdMatrix& b,
                   double t, double z = 1.0);

/// Weighted geometric mean of a commuting family: simultaneous
/// diagonalization, then entrywise exp(sum_y nu(y) log a_y(i)) with the
/// extended-real conventions (a zero eigenvalue with positive weight kills
/// the entry; zero weight contributes a factor 1). PreconditionError on
/// non-commuting input, reporting the worst commutator norm.
PsdMatrix commuting_gm(const WeightedFamily& family);

/// Joint eigenbasis of a commuting Hermitian family, validated by
/// off-diagonal residuals. Returns the basis and per-member eigenvalue
/// vectors (diagonal entries in that basis).
struct JointDiagonalization {
    Mat basis;
    std::vector<std::vector<double>> eigenvalues;
};
JointDiagonalization joint_diagonalize(const std::vector<Mat>& members,
                                       double commute_tol);

}  // namespace opmean

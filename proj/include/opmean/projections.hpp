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

#include <span>
#include <vector>

#include "opmean/matcore.hpp"

namespace opmean {

/// Orthogonal projection; the constructor checks Hermitian idempotence
/// (P^2 = P within 1e-9, eigenvalues in {0,1} within 1e-8).
class Projection {
  public:
    explicit Projection(Mat p);
    static Projection trusted(Mat p);
    /// Support projection of an arbitrary PSD matrix.
    static Projection support_of(const Mat& psd);

    const Mat& mat() const { return p_; }
    std::size_t dim() const { return p_.rows(); }
    std::size_t rank() const;
    Projection complement() const;

  private:
    struct Trusted {};
    Projection(Mat p, Trusted);
    Mat p_;
};

/// Two-projection normal form: 2-dimensional Jordan blocks with angles
/// theta_k strictly inside (0, pi/2), plus a commuting remainder where S and
/// Q act by 0/1 diagonal bits. Blocks are canonicalized by ascending theta
/// and a deterministic phase fix on e_k.
struct JordanBlock {
    double theta;
    std::vector<complexd> e;       // range(S) direction of the block
    std::vector<complexd> e_perp;  // completes the block basis
};

struct JordanDecomposition {
    std::size_t dim = 0;
    std::vector<JordanBlock> blocks;
    Mat commuting_basis;        // columns span H'
    std::vector<int> s_prime;   // 0/1 bits of S on the commuting basis
    std::vector<int> q_prime;   // 0/1 bits of Q there

    Mat reconstruct_s() const;
    Mat reconstruct_q() const;
    /// phi_k = cos(theta) e_k + sin(theta) e_perp_k.
    std::vector<complexd> phi(std::size_t block_index) const;
};

/// Jordan two-projection normal form via the spectrum of S + Q: eigenvalues
/// 1 +- cos(theta) pair up into blocks, eigenvalues near {0, 1, 2} form the
/// commuting part (theta = pi/2 pairs land there as commuting orthogonal
/// pairs). Throws NumericalDegeneracyError when the 1+c / 1-c multiplicities
/// cannot be matched at the working tolerance.
JordanDecomposition jordan_decompose(const Projection& s, const Projection& q);

/// Operator norm of S Q = max(max_k cos theta_k, ||S' Q'||).
double overlap(const Projection& s, const Projection& q);

/// Q is eps-dominated by S iff Q S Q >= (1 - eps^2) Q on range(Q).
bool eps_dominated(const Projection& q, const Projection& s, double eps);
/// Q and S are eps-orthogonal iff Q S Q <= eps^2 Q.
bool eps_orthogonal(const Projection& q, const Projection& s, double eps);

/// Keeps the block directions phi_k with cos theta_k <= eps plus Q'(I - S'):
/// the eps-subtraction Q (-)_eps S (<= Q, eps-orthogonal to S).
Projection eps_subtract(const Projection& q, const Projection& s, double eps);
/// Keeps phi_k with sin theta_k <= eps plus Q'S': the restriction Q_{S,eps}
/// (<= Q, eps-dominated by S).
Projection restrict_to(const Projection& q, const Projection& s, double eps);

enum class EpsRtMode { ClosedForm, Recursive };

/// The constant eps(r,t) under which pairwise eps-orthogonality of r
/// projections forces join(Q_j) <= t sum(Q_j). Closed form
/// sqrt((t-1)/((r-1)(2t-1))); the recursive mode follows the induction with
/// f(t) = (1+t)/2 and may return a smaller valid constant.
double eps_rt(int r, double t, EpsRtMode mode = EpsRtMode::ClosedForm);

Projection join(std::span<const Projection> qs);
Projection meet(std::span<const Projection> qs);
inline Projection join(const Projection& a, const Projection& b) {
    const Projection qs[] = {a, b};
    return join(qs);
}
inline Projection meet(const Projection& a, const Projection& b) {
    const Projection qs[] = {a, b};
    return meet(qs);
}

/// Composite test T = join_j restrict_to(T_j, S_j, eps) for states with
/// pairwise disjoint supports S_j. Certificate (1) bounds the kept error mass
/// against (1/eps^2) times the original, evaluated on the maximally mixed
/// representative of each support; certificate (2) checks T <= t sum_j T_j.
struct CompositeTestCert {
    std::vector<double> kept_error;      // Tr rho_j (I - T)
    std::vector<double> original_error;  // Tr rho_j (I - T_j)
    bool error_bound_holds = true;       // kept <= original / eps^2 for all j
    double t_used = 2.0;
    double sum_bound_margin = 0.0;  // lambda_min(t sum T_j - T)
    bool sum_bound_holds = false;
    double eps_rt_value = 0.0;  // eps(r, t) closed form
    bool eps_below_half_threshold = false;
};

struct CompositeTestResult {
    Projection test;
    CompositeTestCert cert;
};

CompositeTestResult composite_test(std::span<const Projection> tests,
                                   std::span<const Projection> supports,
                                   double eps, double t_for_cert = 2.0);

}  // namespace opmean

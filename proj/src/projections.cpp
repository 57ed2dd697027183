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

#include "opmean/projections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opmean/config.hpp"

namespace opmean {

namespace {

constexpr double kThetaTol = 1e-7;     // block vs commuting assignment
constexpr double kEdgeBand = 1e-12;    // snap to eigenvalues 0 and 2

}  // namespace

Projection::Projection(Mat p, Trusted) : p_(std::move(p)) {
    if (!p_.is_square()) throw DimensionError("Projection: non-square matrix");
    p_.hermitize();
}

Projection::Projection(Mat p) : Projection(std::move(p), Trusted{}) {
    if ((p_ * p_ - p_).max_abs() > 1e-9)
        throw DomainError("Projection: matrix is not idempotent within 1e-9");
    for (double lam : eigh(p_).eigenvalues)
        if (std::min(std::abs(lam), std::abs(lam - 1.0)) > 1e-8)
            throw DomainError("Projection: eigenvalue outside {0,1} within 1e-8");
}

Projection Projection::trusted(Mat p) { return Projection(std::move(p), Trusted{}); }

Projection Projection::support_of(const Mat& psd) {
    return Projection(support_proj(psd), Trusted{});
}

std::size_t Projection::rank() const {
    return static_cast<std::size_t>(std::lround(p_.trace().real()));
}

Projection Projection::complement() const {
    Mat c = Mat::identity(dim());
    c -= p_;
    return Projection(std::move(c), Trusted{});
}

Mat JordanDecomposition::reconstruct_s() const {
    Mat s(dim, dim);
    for (const auto& b : blocks) s += Mat::outer(b.e);
    for (std::size_t j = 0; j < s_prime.size(); ++j) {
        if (!s_prime[j]) continue;
        std::vector<complexd> f(dim);
        for (std::size_t i = 0; i < dim; ++i) f[i] = commuting_basis(i, j);
        s += Mat::outer(f);
    }
    s.hermitize();
    return s;
}

std::vector<complexd> JordanDecomposition::phi(std::size_t block_index) const {
    const auto& b = blocks[block_index];
    std::vector<complexd> v(dim);
    const double c = std::cos(b.theta), sn = std::sin(b.theta);
    for (std::size_t i = 0; i < dim; ++i) v[i] = c * b.e[i] + sn * b.e_perp[i];
    return v;
}

Mat JordanDecomposition::reconstruct_q() const {
    Mat q(dim, dim);
    for (std::size_t k = 0; k < blocks.size(); ++k) q += Mat::outer(phi(k));
    for (std::size_t j = 0; j < q_prime.size(); ++j) {
        if (!q_prime[j]) continue;
        std::vector<complexd> f(dim);
        for (std::size_t i = 0; i < dim; ++i) f[i] = commuting_basis(i, j);
        q += Mat::outer(f);
    }
    q.hermitize();
    return q;
}

JordanDecomposition jordan_decompose(const Projection& s, const Projection& q) {
    if (s.dim() != q.dim()) throw DimensionError("jordan_decompose: dim mismatch");
    const std::size_t d = s.dim();
    const auto sd = eigh(s.mat() + q.mat());

    JordanDecomposition out;
    out.dim = d;

    struct Pending {
        double c;  // cos(theta)
        std::vector<complexd> u;
    };
    std::vector<Pending> upper;           // eigenvalues 1 + c
    std::vector<double> lower;            // c values from eigenvalues 1 - c
    std::vector<std::vector<complexd>> commuting_e1;  // eigenvalue ~1 vectors
    std::vector<std::vector<complexd>> comm_vecs;
    std::vector<int> s_bits, q_bits;

    for (std::size_t k = 0; k < d; ++k) {
        const double lam = sd.eigenvalues[k];
        std::vector<complexd> u(d);
        for (std::size_t i = 0; i < d; ++i) u[i] = sd.eigenvectors(i, k);
        if (lam <= kEdgeBand) {
            comm_vecs.push_back(std::move(u));
            s_bits.push_back(0);
            q_bits.push_back(0);
        } else if (lam >= 2.0 - kEdgeBand) {
            comm_vecs.push_back(std::move(u));
            s_bits.push_back(1);
            q_bits.push_back(1);
        } else if (std::abs(lam - 1.0) <= kThetaTol) {
            commuting_e1.push_back(std::move(u));
        } else if (lam > 1.0) {
            upper.push_back({lam - 1.0, std::move(u)});
        } else {
            lower.push_back(1.0 - lam);
        }
    }

    // Each genuine block contributes the pair 1 +- cos(theta); validate the
    // multiplicity match before building blocks.
    std::sort(lower.begin(), lower.end());
    std::sort(upper.begin(), upper.end(),
              [](const Pending& a, const Pending& b) { return a.c < b.c; });
    if (upper.size() != lower.size())
        throw NumericalDegeneracyError(
            "jordan_decompose: unmatched eigenvalue pairing; try a smaller tol");
    for (std::size_t i = 0; i < upper.size(); ++i)
        if (std::abs(upper[i].c - lower[i]) > 2.0 * kThetaTol)
            throw NumericalDegeneracyError(
                "jordan_decompose: eigenvalue pairing off by more than 2*theta_tol");

    for (auto& p : upper) {
        // e = S u / ||S u||, phi = Q u / ||Q u||; block angle from the
        // eigenvalue, phases fixed so <e, phi> = cos(theta) > 0 and the
        // largest entry of e is real positive.
        auto su = s.mat().apply(p.u);
        auto qu = q.mat().apply(p.u);
        const double ns = norm2(su), nq = norm2(qu);
        if (ns <= 1e-14 || nq <= 1e-14)
            throw NumericalDegeneracyError("jordan_decompose: degenerate block vector");
        for (auto& x : su) x /= ns;
        for (auto& x : qu) x /= nq;
        std::size_t imax = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(su[i]) > std::abs(su[imax])) imax = i;
        const complexd ph = su[imax] / std::abs(su[imax]);
        for (auto& x : su) x /= ph;

        complexd ov = inner(su, qu);
        const complexd ph2 = ov / std::abs(ov);
        for (auto& x : qu) x /= ph2;
        const double c = std::clamp(p.c, 0.0, 1.0);
        const double theta = std::acos(c);
        const double sn = std::sin(theta);
        std::vector<complexd> eperp(d);
        for (std::size_t i = 0; i < d; ++i) eperp[i] = (qu[i] - c * su[i]) / sn;
        const double npp = norm2(eperp);
        for (auto& x : eperp) x /= npp;
        out.blocks.push_back({theta, std::move(su), std::move(eperp)});
    }
    std::sort(out.blocks.begin(), out.blocks.end(),
              [](const JordanBlock& a, const JordanBlock& b) {
                  return a.theta < b.theta;
              });

    // Eigenvalue-1 space: S and Q restrict to complementary commuting
    // projections there; diagonalize the compression of S to read the bits.
    if (!commuting_e1.empty()) {
        const std::size_t m = commuting_e1.size();
        Mat w(d, m);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < d; ++i) w(i, j) = commuting_e1[j][i];
        const Mat s_small = s.mat().compress(w);
        const auto sd1 = eigh(s_small);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<complexd> f(d, complexd(0.0));
            for (std::size_t jj = 0; jj < m; ++jj) {
                const complexd coef = sd1.eigenvectors(jj, j);
                for (std::size_t i = 0; i < d; ++i) f[i] += coef * commuting_e1[jj][i];
            }
            const int bit = sd1.eigenvalues[j] > 0.5 ? 1 : 0;
            comm_vecs.push_back(std::move(f));
            s_bits.push_back(bit);
            q_bits.push_back(1 - bit);
        }
    }

    out.commuting_basis = Mat(d, comm_vecs.size());
    for (std::size_t j = 0; j < comm_vecs.size(); ++j)
        for (std::size_t i = 0; i < d; ++i) out.commuting_basis(i, j) = comm_vecs[j][i];
    out.s_prime = std::move(s_bits);
    out.q_prime = std::move(q_bits);
    return out;
}

double overlap(const Projection& s, const Projection& q) {
    const Mat qsq = q.mat() * s.mat() * q.mat();
    const double top = std::max(0.0, lambda_max(qsq));
    return std::min(1.0, std::sqrt(top));
}

bool eps_dominated(const Projection& q, const Projection& s, double eps) {
    if (eps < 0.0 || eps >= 1.0) throw DomainError("eps_dominated: eps outside [0,1)");
    const std::size_t r = q.rank();
    if (r == 0) return true;
    // Compress Q S Q to range(Q).
    const auto sd = eigh(q.mat());
    const std::size_t d = q.dim();
    Mat w(d, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < d; ++i)
            w(i, j) = sd.eigenvectors(i, d - r + j);  // eigenvalue-1 columns
    const Mat compressed = s.mat().compress(w);
    return lambda_min(compressed) >= 1.0 - eps * eps - 1e-9;
}

bool eps_orthogonal(const Projection& q, const Projection& s, double eps) {
    if (eps < 0.0 || eps >= 1.0) throw DomainError("eps_orthogonal: eps outside [0,1)");
    const Mat qsq = q.mat() * s.mat() * q.mat();
    return lambda_max(qsq) <= eps * eps + 1e-9;
}

namespace {

Projection assemble_from_blocks(const JordanDecomposition& jd,
                                const std::function<bool(double)>& keep_block,
                                const std::function<bool(int, int)>& keep_comm) {
    Mat p(jd.dim, jd.dim);
    for (std::size_t k = 0; k < jd.blocks.size(); ++k)
        if (keep_block(jd.blocks[k].theta)) p += Mat::outer(jd.phi(k));
    for (std::size_t j = 0; j < jd.s_prime.size(); ++j) {
        if (!keep_comm(jd.s_prime[j], jd.q_prime[j])) continue;
        std::vector<complexd> f(jd.dim);
        for (std::size_t i = 0; i < jd.dim; ++i) f[i] = jd.commuting_basis(i, j);
        p += Mat::outer(f);
    }
    p.hermitize();
    return Projection::trusted(std::move(p));
}

}  // namespace

Projection eps_subtract(const Projection& q, const Projection& s, double eps) {
    if (eps < 0.0 || eps >= 1.0) throw DomainError("eps_subtract: eps outside [0,1)");
    const auto jd = jordan_decompose(s, q);
    return assemble_from_blocks(
        jd, [eps](double theta) { return std::cos(theta) <= eps; },
        [](int sp, int qp) { return qp == 1 && sp == 0; });
}

Projection restrict_to(const Projection& q, const Projection& s, double eps) {
    if (eps < 0.0 || eps >= 1.0) throw DomainError("restrict_to: eps outside [0,1)");
    const auto jd = jordan_decompose(s, q);
    return assemble_from_blocks(
        jd, [eps](double theta) { return std::sin(theta) <= eps; },
        [](int sp, int qp) { return qp == 1 && sp == 1; });
}

double eps_rt(int r, double t, EpsRtMode mode) {
    if (r < 2) throw DomainError("eps_rt: r must be at least 2");
    if (!(t > 1.0)) throw DomainError("eps_rt: t must exceed 1");
    if (mode == EpsRtMode::ClosedForm)
        return std::sqrt((t - 1.0) / ((r - 1.0) * (2.0 * t - 1.0)));
    // Induction with f(t) = (1+t)/2: eps(2,t) = 1 - 1/t, then
    // eps(n+1,t) = min(eps(n, f(t)), (1 - f(t)/t)/sqrt(n f(t))).
    std::function<double(int, double)> rec = [&](int n, double tt) -> double {
        if (n == 2) return 1.0 - 1.0 / tt;
        const double ft = 0.5 * (1.0 + tt);
        return std::min(rec(n - 1, ft),
                        (1.0 - ft / tt) / std::sqrt((n - 1) * ft));
    };
    return rec(r, t);
}

Projection join(std::span<const Projection> qs) {
    if (qs.empty()) throw DimensionError("join: empty list");
    Mat sum(qs.front().dim(), qs.front().dim());
    for (const auto& q : qs) {
        if (q.dim() != qs.front().dim()) throw DimensionError("join: dim mismatch");
        sum += q.mat();
    }
    return Projection::trusted(support_proj(sum));
}

Projection meet(std::span<const Projection> qs) {
    if (qs.empty()) throw DimensionError("meet: empty list");
    std::vector<Projection> complements;
    complements.reserve(qs.size());
    for (const auto& q : qs) complements.push_back(q.complement());
    return join(complements).complement();
}

CompositeTestResult composite_test(std::span<const Projection> tests,
                                   std::span<const Projection> supports,
                                   double eps, double t_for_cert) {
    if (tests.size() != supports.size() || tests.empty())
        throw DimensionError("composite_test: tests/supports size mismatch");
    if (eps <= 0.0 || eps >= 1.0)
        throw DomainError("composite_test: eps outside (0,1)");
    for (std::size_t j = 0; j < supports.size(); ++j)
        for (std::size_t k = j + 1; k < supports.size(); ++k)
            if (meet(supports[j], supports[k]).rank() != 0)
                throw PreconditionError("composite_test: supports are not disjoint");

    std::vector<Projection> restricted;
    restricted.reserve(tests.size());
    for (std::size_t j = 0; j < tests.size(); ++j)
        restricted.push_back(restrict_to(tests[j], supports[j], eps));
    Projection t = join(restricted);

    CompositeTestCert cert;
    cert.t_used = t_for_cert;
    const std::size_t d = t.dim();
    const Mat id = Mat::identity(d);
    for (std::size_t j = 0; j < tests.size(); ++j) {
        // Maximally mixed representative of the support.
        Mat rho = supports[j].mat();
        const double rk = static_cast<double>(supports[j].rank());
        rho *= complexd(1.0 / rk);
        const double kept = trace_product(rho, id - t.mat()).real();
        const double orig = trace_product(rho, id - tests[j].mat()).real();
        cert.kept_error.push_back(kept);
        cert.original_error.push_back(orig);
        if (kept > orig / (eps * eps) + 1e-9) cert.error_bound_holds = false;
    }
    Mat bound(d, d);
    for (const auto& tj : tests) bound += tj.mat();
    bound *= complexd(t_for_cert);
    bound -= t.mat();
    cert.sum_bound_margin = lambda_min(bound);
    cert.sum_bound_holds = cert.sum_bound_margin >= -1e-8;
    cert.eps_rt_value = eps_rt(static_cast<int>(tests.size() < 2 ? 2 : tests.size()),
                               t_for_cert, EpsRtMode::ClosedForm);
    cert.eps_below_half_threshold = eps < cert.eps_rt_value / 2.0;
    return {std::move(t), std::move(cert)};
}

}  // namespace opmean

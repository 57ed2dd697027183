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

#include "opmean/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opmean/config.hpp"
#include "opmean/membership.hpp"

namespace opmean {

CpMap::CpMap(std::size_t dim_in, std::size_t dim_out, PsdMatrix choi)
    : dim_in_(dim_in), dim_out_(dim_out), choi_(choi.mat()) {
    if (choi_.rows() != dim_in_ * dim_out_)
        throw DimensionError("CpMap: Choi dimension must equal dim_in * dim_out");
}

CpMap CpMap::from_kraus(const std::vector<Mat>& kraus_ops) {
    if (kraus_ops.empty()) throw DimensionError("CpMap: empty Kraus set");
    const std::size_t dout = kraus_ops.front().rows();
    const std::size_t din = kraus_ops.front().cols();
    for (const auto& k : kraus_ops)
        if (k.rows() != dout || k.cols() != din)
            throw DimensionError("CpMap: inconsistent Kraus shapes");
    Mat choi(din * dout, din * dout);
    for (const auto& k : kraus_ops)
        for (std::size_t i = 0; i < din; ++i)
            for (std::size_t kk = 0; kk < dout; ++kk)
                for (std::size_t j = 0; j < din; ++j)
                    for (std::size_t ll = 0; ll < dout; ++ll)
                        choi(i * dout + kk, j * dout + ll) +=
                            k(kk, i) * std::conj(k(ll, j));
    choi.hermitize();
    return CpMap(din, dout, PsdMatrix::trusted(std::move(choi)));
}

CpMap CpMap::identity(std::size_t d) { return from_kraus({Mat::identity(d)}); }

CpMap CpMap::depolarizing(std::size_t dim_in, std::size_t dim_out) {
    Mat choi = Mat::identity(dim_in * dim_out);
    choi *= complexd(1.0 / static_cast<double>(dim_out));
    return CpMap(dim_in, dim_out, PsdMatrix::trusted(std::move(choi)));
}

CpMap CpMap::replacer(const PsdMatrix& a, std::size_t dim_in) {
    return CpMap(dim_in, a.dim(),
                 PsdMatrix::trusted(kron(Mat::identity(dim_in), a.mat())));
}

Mat CpMap::apply(const Mat& rho) const {
    if (rho.rows() != dim_in_ || rho.cols() != dim_in_)
        throw DimensionError("CpMap::apply: state dimension mismatch");
    Mat out(dim_out_, dim_out_);
    for (std::size_t i = 0; i < dim_in_; ++i)
        for (std::size_t j = 0; j < dim_in_; ++j) {
            const complexd rij = rho(i, j);
            if (rij == complexd(0.0)) continue;
            for (std::size_t k = 0; k < dim_out_; ++k)
                for (std::size_t l = 0; l < dim_out_; ++l)
                    out(k, l) += rij * choi_(i * dim_out_ + k, j * dim_out_ + l);
        }
    return out;
}

std::vector<Mat> CpMap::kraus() const {
    const auto sd = eigh(choi_);
    const double cut = config().eig_zero_tol *
                       std::max(std::abs(sd.eigenvalues.back()),
                                std::abs(sd.eigenvalues.front()));
    std::vector<Mat> ops;
    for (std::size_t m = 0; m < sd.eigenvalues.size(); ++m) {
        if (sd.eigenvalues[m] <= cut) continue;
        const double root = std::sqrt(sd.eigenvalues[m]);
        Mat k(dim_out_, dim_in_);
        for (std::size_t i = 0; i < dim_in_; ++i)
            for (std::size_t kk = 0; kk < dim_out_; ++kk)
                k(kk, i) = root * sd.eigenvectors(i * dim_out_ + kk, m);
        ops.push_back(std::move(k));
    }
    // Zero map (e.g. a trivial support wedge of channel means).
    if (ops.empty()) ops.push_back(Mat::zero(dim_out_, dim_in_));
    return ops;
}

bool CpMap::is_trace_preserving(double tol) const {
    const Mat reduced = partial_trace(choi_, dim_in_, dim_out_, 2);
    return (reduced - Mat::identity(dim_in_)).max_abs() <= tol;
}

CpMap compose(const CpMap& f, const CpMap& e) {
    if (f.dim_in() != e.dim_out())
        throw DimensionError("compose: intermediate dimension mismatch");
    std::vector<Mat> ops;
    for (const auto& kf : f.kraus())
        for (const auto& ke : e.kraus()) ops.push_back(kf * ke);
    return CpMap::from_kraus(ops);
}

CpMap tensor(const CpMap& e, const CpMap& f) {
    const std::size_t de_in = e.dim_in(), de_out = e.dim_out();
    const std::size_t df_in = f.dim_in(), df_out = f.dim_out();
    const std::size_t din = de_in * df_in, dout = de_out * df_out;
    Mat choi(din * dout, din * dout);
    // Reorder (in_e (x) out_e) (x) (in_f (x) out_f) into
    // ((in_e in_f) (x) (out_e out_f)).
    for (std::size_t i1 = 0; i1 < de_in; ++i1)
        for (std::size_t k1 = 0; k1 < de_out; ++k1)
            for (std::size_t i2 = 0; i2 < df_in; ++i2)
                for (std::size_t k2 = 0; k2 < df_out; ++k2) {
                    const std::size_t row =
                        (i1 * df_in + i2) * dout + (k1 * df_out + k2);
                    for (std::size_t j1 = 0; j1 < de_in; ++j1)
                        for (std::size_t l1 = 0; l1 < de_out; ++l1)
                            for (std::size_t j2 = 0; j2 < df_in; ++j2)
                                for (std::size_t l2 = 0; l2 < df_out; ++l2) {
                                    const std::size_t col =
                                        (j1 * df_in + j2) * dout + (l1 * df_out + l2);
                                    choi(row, col) =
                                        e.choi()(i1 * de_out + k1, j1 * de_out + l1) *
                                        f.choi()(i2 * df_out + k2, j2 * df_out + l2);
                                }
                }
    return CpMap(din, dout, PsdMatrix::trusted(std::move(choi)));
}

std::pair<bool, double> cp_leq(const CpMap& n, const CpMap& m) {
    if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out())
        throw DimensionError("cp_leq: dimension mismatch");
    const double margin = lambda_min(m.choi() - n.choi());
    return {margin >= -1e-9, margin};
}

CpMap channel_ka_mean(const CpMap& n, const CpMap& m, double t) {
    if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out())
        throw DimensionError("channel_ka_mean: dimension mismatch");
    const PsdMatrix mean = ka_mean(PsdMatrix::trusted(n.choi()),
                                   PsdMatrix::trusted(m.choi()), t);
    return CpMap(n.dim_in(), n.dim_out(), mean);
}

CpMap superop_perspective(const ScalarFn& f, const CpMap& n, const CpMap& m) {
    if (n.dim_in() != m.dim_in() || n.dim_out() != m.dim_out())
        throw DimensionError("superop_perspective: dimension mismatch");
    // N + eps * (completely depolarizing) shifts the Choi by (eps/dim_out) I,
    // so the epsilon path is scaled accordingly.
    std::vector<double> path = default_eps_path();
    for (double& eps : path) eps /= static_cast<double>(n.dim_out());
    const Mat result = perspective(f, n.choi(), m.choi(), path);
    return CpMap(n.dim_in(), n.dim_out(), PsdMatrix(result));
}

namespace {

// Lifted Kraus operators I_ref (x) K_{a_1} (x) ... (x) K_{a_n}.
std::vector<Mat> lifted_kraus(const CpMap& map, std::size_t n, std::size_t ref_dim) {
    const auto ks = map.kraus();
    std::vector<Mat> lifted{Mat::identity(ref_dim)};
    for (std::size_t copy = 0; copy < n; ++copy) {
        std::vector<Mat> next;
        next.reserve(lifted.size() * ks.size());
        for (const auto& l : lifted)
            for (const auto& k : ks) next.push_back(kron(l, k));
        lifted = std::move(next);
    }
    return lifted;
}

Mat apply_lifted(const std::vector<Mat>& lifted, const Mat& phi) {
    Mat out(lifted.front().rows(), lifted.front().rows());
    for (const auto& l : lifted) out += l * phi * l.adjoint();
    out.hermitize();
    return out;
}

}  // namespace

DiscriminationReport discrimination_equivalence_check(const CpMap& e,
                                                      const CpMap& n1,
                                                      const CpMap& n2,
                                                      std::size_t n,
                                                      std::size_t trials, Rng& rng) {
    for (const auto* m : {&n1, &n2})
        if (m->dim_in() != e.dim_in() || m->dim_out() != e.dim_out())
            throw DimensionError("discrimination_equivalence_check: dim mismatch");
    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<double>(e.dim_in() * e.dim_out());
        if (total > static_cast<double>(config().kron_cap))
            throw ResourceError("discrimination_equivalence_check: cap exceeded");
    }

    DiscriminationReport report;
    // Item (5): E <=_CP N2 #_t N1 for some t, via the Choi-level membership
    // scan.
    const auto verdict =
        ka_membership(PsdMatrix::trusted(e.choi()), PsdMatrix::trusted(n1.choi()),
                      PsdMatrix::trusted(n2.choi()), 501, rng.next_seed());
    report.cp_bound_holds = verdict.member;
    if (verdict.member) {
        const auto& iv = verdict.t_intervals.front();
        report.best_t = 0.5 * (iv.first + iv.second);
        report.cp_margin = lambda_min(
            ka_mean(PsdMatrix::trusted(n1.choi()), PsdMatrix::trusted(n2.choi()),
                    report.best_t)
                .mat() -
            e.choi());
    }

    // Item (2): sampled n-copy parallel strategies. Reference system of
    // dimension dim_in^n; the Choi state Psi^{(x) n} is always included.
    std::size_t ref_dim = 1;
    for (std::size_t i = 0; i < n; ++i) ref_dim *= e.dim_in();
    const std::size_t full_dim = ref_dim * ref_dim;  // ref (x) in^n

    const auto le = lifted_kraus(e, n, ref_dim);
    const auto l1 = lifted_kraus(n1, n, ref_dim);
    const auto l2 = lifted_kraus(n2, n, ref_dim);

    report.worst_strategy_margin = std::numeric_limits<double>::infinity();
    auto run_strategy = [&](const Mat& phi_in) {
        // Lifted Kraus slots act on ref (x) in^n once the copies are grouped;
        // the sampled states live on exactly that product space.
        const Mat se = apply_lifted(le, phi_in);
        const Mat s1 = apply_lifted(l1, phi_in);
        const Mat s2 = apply_lifted(l2, phi_in);
        auto probe = [&](const Mat& test) {
            const double te = trace_product(se, test).real();
            const double ty = std::max(trace_product(s1, test).real(),
                                       trace_product(s2, test).real());
            const double scale = std::max({1.0, std::abs(te), std::abs(ty)});
            const double margin = (ty - te) / scale;
            if (margin < report.worst_strategy_margin)
                report.worst_strategy_margin = margin;
        };
        probe(Mat::identity(se.rows()));
        for (const Mat* diff_base : {&s1, &s2}) {
            Mat diff = se - *diff_base;
            const auto sd = eigh(diff);
            Mat pos(diff.rows(), diff.rows());
            std::vector<complexd> v(diff.rows());
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (sd.eigenvalues[k] <= 0.0) continue;
                for (std::size_t i = 0; i < v.size(); ++i)
                    v[i] = sd.eigenvectors(i, k);
                pos += Mat::outer(v);
            }
            probe(pos);
        }
        for (int extra = 0; extra < 4; ++extra) {
            const Mat g = rng.gaussian_matrix(se.rows(), 2);
            Mat w = g * g.adjoint();
            const double fn = w.frobenius_norm();
            if (fn > 0.0) w *= complexd(1.0 / fn);
            probe(w);
        }
    };

    // Choi-vector strategy: |Psi><Psi|^{(x) n} with copy slots regrouped so
    // the reference factors come first. Built directly from the regrouped
    // index map.
    {
        Mat psi(full_dim, full_dim);
        // Vector Psi_n[(r, a)] = prod_copies delta(r_c, a_c) where r and a are
        // base-dim_in tuples.
        std::vector<complexd> vec(full_dim, complexd(0.0));
        for (std::size_t r = 0; r < ref_dim; ++r) vec[r * ref_dim + r] = 1.0;
        psi = Mat::outer(vec);
        run_strategy(psi);
    }
    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto g = rng.gaussian_vector(full_dim);
        const double nn = norm2(g);
        for (auto& x : g) x /= nn;
        run_strategy(Mat::outer(g));
    }

    report.strategies_hold = report.worst_strategy_margin >= -1e-9;
    report.consistent = !report.cp_bound_holds || report.strategies_hold;
    return report;
}

}  // namespace opmean

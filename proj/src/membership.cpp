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

#include "opmean/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opmean/config.hpp"
#include "opmean/means.hpp"

namespace opmean {

namespace {

constexpr double kMemberTol = 1e-9;  // relative to the operand scale
constexpr double kRefineTol = 1e-6;

double phi_of_t(const PsdMatrix& c, const PsdMatrix& a1, const PsdMatrix& a2,
                double t) {
    return lambda_min(ka_mean(a1, a2, t).mat() - c.mat());
}

double operand_scale(const PsdMatrix& c, const PsdMatrix& a1, const PsdMatrix& a2) {
    return std::max({1.0, lambda_max(a1.mat()), lambda_max(a2.mat()),
                     lambda_max(c.mat())});
}

// Bisection for the feasibility boundary between a feasible and an
// infeasible t (phi measured against -tol).
double refine_boundary(const PsdMatrix& c, const PsdMatrix& a1,
                       const PsdMatrix& a2, double t_feasible,
                       double t_infeasible, double tol) {
    while (std::abs(t_feasible - t_infeasible) > kRefineTol) {
        const double mid = 0.5 * (t_feasible + t_infeasible);
        if (phi_of_t(c, a1, a2, mid) >= -tol)
            t_feasible = mid;
        else
            t_infeasible = mid;
    }
    return t_feasible;
}

struct WitnessSearch {
    int n = 0;
    std::optional<PsdMatrix> x;
    double margin = 0.0;
};

// Best-effort hunt for X with Tr C^n X > max(Tr A1^n X, Tr A2^n X). Found
// witnesses refute membership for every t at once, since the geometric RHS
// is at most the max of the two traces.
WitnessSearch find_witness(const PsdMatrix& c, const PsdMatrix& a1,
                           const PsdMatrix& a2, std::uint64_t seed) {
    WitnessSearch found;
    Rng rng(seed);
    const std::size_t d = c.dim();
    for (int n = 1; n <= 3; ++n) {
        double dim_n = std::pow(static_cast<double>(d), n);
        if (dim_n > static_cast<double>(config().kron_cap)) break;
        const Mat cn = kron_power(c.mat(), n);
        const Mat a1n = kron_power(a1.mat(), n);
        const Mat a2n = kron_power(a2.mat(), n);
        const std::size_t dn = cn.rows();

        auto consider = [&](std::span<const complexd> v) {
            const double tc = cn.quadratic_form(v);
            const double t1 = a1n.quadratic_form(v);
            const double t2 = a2n.quadratic_form(v);
            const double scale = std::max({1e-30, tc, t1, t2});
            const double m = (tc - std::max(t1, t2)) / scale;
            if (m > found.margin) {
                found.margin = m;
                found.x = PsdMatrix::trusted(Mat::outer(v));
                found.n = n;
            }
        };

        for (const Mat* base : {&cn, &a1n, &a2n}) {
            const auto sd = eigh(*base);
            std::vector<complexd> v(dn);
            for (std::size_t k = 0; k < dn; ++k) {
                for (std::size_t i = 0; i < dn; ++i) v[i] = sd.eigenvectors(i, k);
                consider(v);
            }
        }
        for (int trial = 0; trial < 400; ++trial) consider(rng.gaussian_vector(dn));
        if (found.margin > 1e-8) break;
    }
    if (found.margin <= 1e-8) return {};
    return found;
}

}  // namespace

MembershipVerdict ka_membership(const PsdMatrix& c, const PsdMatrix& a1,
                                const PsdMatrix& a2, std::size_t grid_points,
                                std::uint64_t witness_seed) {
    if (c.dim() != a1.dim() || c.dim() != a2.dim())
        throw DimensionError("ka_membership: dimension mismatch");
    if (grid_points < 3) throw DomainError("ka_membership: grid too small");

    const double scale = operand_scale(c, a1, a2);
    const double member_tol = kMemberTol * scale;
    std::vector<double> ts(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i)
        ts[i] = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    std::vector<double> phis(grid_points);
    std::vector<bool> ok(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        phis[i] = phi_of_t(c, a1, a2, ts[i]);
        ok[i] = phis[i] >= -member_tol;
    }
    // Interior local maxima of phi just below the threshold get a
    // golden-section polish: an off-grid boundary member peaks between grid
    // points. Probes only ever add genuinely feasible points.
    const double grid_h = 1.0 / static_cast<double>(grid_points - 1);
    const double peak_gate = -0.3 * scale;
    for (std::size_t i = 1; i + 1 < grid_points; ++i) {
        if (ok[i] || phis[i] < peak_gate) continue;
        if (phis[i] < phis[i - 1] || phis[i] < phis[i + 1]) continue;
        double a = ts[i] - grid_h, b = ts[i] + grid_h;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = phi_of_t(c, a1, a2, x1), f2 = phi_of_t(c, a1, a2, x2);
        // Deep polish: a boundary member's peak sits at phi = 0 exactly, and
        // phi falls off linearly (slope on the operand scale), so the bracket
        // must shrink well below the membership tolerance to certify it.
        while (b - a > 1e-12) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = phi_of_t(c, a1, a2, x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = phi_of_t(c, a1, a2, x1);
            }
        }
        if (std::max(f1, f2) >= -member_tol) {
            ok[i] = true;  // credit the nearest grid cell with the found point
            ts[i] = f1 > f2 ? x1 : x2;
        }
    }

    MembershipVerdict verdict;
    verdict.method = "ka-grid";
    // Endpoint probes are their own cells: the map t |-> B#_tA can jump at
    // t in {0,1}, so feasibility there does not extend inward.
    for (std::size_t i = 0; i < grid_points;) {
        if (!ok[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < grid_points && ok[j + 1]) ++j;
        double lo = ts[i], hi = ts[j];
        const bool lo_is_endpoint = (i == 0);
        const bool hi_is_endpoint = (j == grid_points - 1);
        if (lo_is_endpoint && j == 0) {
            verdict.t_intervals.emplace_back(0.0, 0.0);
            i = j + 1;
            continue;
        }
        if (hi_is_endpoint && i == grid_points - 1) {
            verdict.t_intervals.emplace_back(1.0, 1.0);
            i = j + 1;
            continue;
        }
        // Runs touching an endpoint keep it only if the neighbouring interior
        // point is feasible too (it is, by construction of the run); refine
        // interior boundaries against the adjacent infeasible points.
        if (!lo_is_endpoint && i > 0)
            lo = refine_boundary(c, a1, a2, ts[i], ts[i - 1], member_tol);
        if (!hi_is_endpoint && j + 1 < grid_points)
            hi = refine_boundary(c, a1, a2, ts[j], ts[j + 1], member_tol);
        verdict.t_intervals.emplace_back(lo, hi);
        i = j + 1;
    }

    verdict.member = !verdict.t_intervals.empty();
    if (!verdict.member) {
        const auto w = find_witness(c, a1, a2, witness_seed);
        if (w.n > 0) {
            verdict.witness_n = w.n;
            verdict.witness_x = w.x;
            verdict.witness_margin = w.margin;
            verdict.method = "ka-grid+witness";
        }
    }
    return verdict;
}

namespace {

std::vector<double> project_to_simplex(std::vector<double> v) {
    // Euclidean projection; standard sort-based algorithm: rho is the last
    // index (descending order) where u_i exceeds the running threshold.
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double cand = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - cand > 0.0) {
            theta = cand;
            found = true;
        }
    }
    if (!found) {
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
        return v;
    }
    for (auto& x : v) x = std::max(0.0, x - theta);
    double s = 0.0;
    for (double x : v) s += x;
    for (auto& x : v) x /= s;
    return v;
}

}  // namespace

AmFeasibility am_feasibility_quantum(const PsdMatrix& c,
                                     const std::vector<PsdMatrix>& family,
                                     std::size_t n) {
    if (family.empty()) throw DimensionError("am_feasibility_quantum: empty family");
    for (const auto& a : family)
        if (a.dim() != c.dim())
            throw DimensionError("am_feasibility_quantum: dimension mismatch");
    const Mat cn = kron_power(c.mat(), n);
    std::vector<Mat> an;
    an.reserve(family.size());
    for (const auto& a : family) an.push_back(kron_power(a.mat(), n));

    auto lam = [&](const std::vector<double>& mu) {
        Mat m = cn;
        m *= complexd(-1.0);
        for (std::size_t y = 0; y < an.size(); ++y) {
            Mat term = an[y];
            term *= complexd(mu[y]);
            m += term;
        }
        return m;
    };

    AmFeasibility out;
    if (family.size() == 2) {
        // Concave profile in p; golden-section to 1e-10, probing endpoints too.
        auto f = [&](double p) { return lambda_min(lam({p, 1.0 - p})); };
        double a = 0.0, b = 1.0;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f(x1), f2 = f(x2);
        while (b - a > 1e-10) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = f(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = f(x1);
            }
        }
        double best_p = 0.5 * (a + b);
        double best = f(best_p);
        for (double p : {0.0, 1.0}) {
            const double v = f(p);
            if (v > best) {
                best = v;
                best_p = p;
            }
        }
        out.max_lambda_min = best;
        out.mu = {best_p, 1.0 - best_p};
    } else {
        std::vector<double> mu(family.size(), 1.0 / static_cast<double>(family.size()));
        double norm_scale = 0.0;
        for (const auto& a : an) norm_scale = std::max(norm_scale, lambda_max(a));
        const double s0 = norm_scale > 0.0 ? 1.0 / norm_scale : 1.0;
        double best = -std::numeric_limits<double>::infinity();
        std::vector<double> best_mu = mu;
        for (int it = 0; it < 2000; ++it) {
            const Mat m = lam(mu);
            const auto sd = eigh(m);
            const double val = sd.eigenvalues.front();
            if (val > best) {
                best = val;
                best_mu = mu;
            }
            std::vector<complexd> v(m.rows());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = sd.eigenvectors(i, 0);
            const double step = s0 / std::sqrt(static_cast<double>(it + 1));
            for (std::size_t y = 0; y < mu.size(); ++y)
                mu[y] += step * an[y].quadratic_form(v);
            mu = project_to_simplex(std::move(mu));
        }
        out.max_lambda_min = best;
        out.mu = best_mu;
    }
    double scale = std::max(1.0, lambda_max(cn));
    for (const auto& a : an) scale = std::max(scale, lambda_max(a));
    out.feasible = out.max_lambda_min >= -1e-8 * scale;
    return out;
}

OracleReport weak_geometric_oracle(const PsdMatrix& c, const PsdMatrix& a1,
                                   const PsdMatrix& a2, double t, std::size_t n,
                                   std::size_t trials, Rng& rng) {
    if (t < 0.0 || t > 1.0) throw DomainError("weak_geometric_oracle: t outside [0,1]");
    const Mat cn = kron_power(c.mat(), n);
    const Mat a1n = kron_power(a1.mat(), n);
    const Mat a2n = kron_power(a2.mat(), n);
    const std::size_t dn = cn.rows();

    OracleReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    auto record = [&](double tc, double t1, double t2, auto make_x) {
        tc = std::max(0.0, tc);
        const double rhs = ext_pow(ExtReal(std::max(0.0, t1)), t).raw() *
                           ext_pow(ExtReal(std::max(0.0, t2)), 1.0 - t).raw();
        const double scale = std::max({1.0, tc, rhs});
        const double margin = (rhs - tc) / scale;
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_x = PsdMatrix::trusted(make_x());
        }
    };
    auto check_vec = [&](std::span<const complexd> v) {
        record(cn.quadratic_form(v), a1n.quadratic_form(v), a2n.quadratic_form(v),
               [&] { return Mat::outer(v); });
    };

    record(cn.trace().real(), a1n.trace().real(), a2n.trace().real(),
           [&] { return Mat::identity(dn); });
    for (const Mat* base : {&a1n, &a2n, &cn}) {
        const auto sd = eigh(*base);
        std::vector<complexd> v(dn);
        for (std::size_t k = 0; k < dn; ++k) {
            for (std::size_t i = 0; i < dn; ++i) v[i] = sd.eigenvectors(i, k);
            check_vec(v);
        }
    }
    for (std::size_t trial = 0; trial < trials; ++trial)
        check_vec(rng.gaussian_vector(dn));
    report.holds = report.worst_margin >= -kMemberTol;
    return report;
}

OracleReport sup_bound_oracle(const PsdMatrix& c,
                              const std::vector<PsdMatrix>& family, std::size_t n,
                              std::size_t trials, Rng& rng) {
    if (family.empty()) throw DimensionError("sup_bound_oracle: empty family");
    const Mat cn = kron_power(c.mat(), n);
    std::vector<Mat> an;
    for (const auto& a : family) an.push_back(kron_power(a.mat(), n));
    const std::size_t dn = cn.rows();

    OracleReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    auto check = [&](const Mat& test) {
        const double tc = trace_product(cn, test).real();
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& a : an)
            best = std::max(best, trace_product(a, test).real());
        const double scale = std::max({1.0, std::abs(tc), std::abs(best)});
        const double margin = (best - tc) / scale;
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_x = PsdMatrix::trusted(test);
        }
    };

    check(Mat::identity(dn));
    for (const auto& a : an) {
        // Positive-part spectral projector of C^n - A^n, the natural
        // adversarial test for that pair, plus the top eigenprojector.
        Mat diff = cn - a;
        const auto sd = eigh(diff);
        Mat pos(dn, dn);
        std::vector<complexd> v(dn);
        for (std::size_t k = 0; k < dn; ++k) {
            if (sd.eigenvalues[k] <= 0.0) continue;
            for (std::size_t i = 0; i < dn; ++i) v[i] = sd.eigenvectors(i, k);
            pos += Mat::outer(v);
        }
        check(pos);
        for (std::size_t i = 0; i < dn; ++i) v[i] = sd.eigenvectors(i, dn - 1);
        check(Mat::outer(v));
    }
    for (std::size_t trial = 0; trial < trials; ++trial) {
        // Low-rank Wishart scaled into [0,1] by the Frobenius norm, a cheap
        // upper bound on the top eigenvalue.
        const Mat g = rng.gaussian_matrix(dn, 4);
        Mat w = g * g.adjoint();
        const double f = w.frobenius_norm();
        if (f > 0.0) w *= complexd(1.0 / f);
        check(w);
    }
    report.holds = report.worst_margin >= -kMemberTol;
    return report;
}

}  // namespace opmean

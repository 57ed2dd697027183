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

#include "opmean/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opmean/config.hpp"
#include "opmean/means.hpp"

namespace opmean {

namespace {

constexpr int kGridPoints = 512;
constexpr double kGoldenTol = 1e-8;

double logsumexp(const std::vector<double>& terms) {
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(terms.begin(), terms.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

void require_nonzero(const PsdMatrix& a, const char* who) {
    if (a.mat().trace().real() <= 0.0)
        throw DomainError(std::string(who) + ": zero operator");
}

// Cached spectral data for repeated Tr A^alpha B^{1-alpha} evaluations.
struct PetzCache {
    std::vector<double> log_a, log_b;  // kept (positive) eigenvalues
    std::vector<std::vector<double>> log_overlap;  // log |<u_i, v_j>|^2

    explicit PetzCache(const Mat& a, const Mat& b) {
        const auto sa = eigh(a);
        const auto sb = eigh(b);
        const double cut_a =
            config().eig_zero_tol * std::max(std::abs(sa.eigenvalues.back()),
                                             std::abs(sa.eigenvalues.front()));
        const double cut_b =
            config().eig_zero_tol * std::max(std::abs(sb.eigenvalues.back()),
                                             std::abs(sb.eigenvalues.front()));
        const std::size_t n = a.rows();
        std::vector<std::size_t> ia, ib;
        for (std::size_t i = 0; i < n; ++i) {
            if (sa.eigenvalues[i] > cut_a) {
                ia.push_back(i);
                log_a.push_back(std::log(sa.eigenvalues[i]));
            }
            if (sb.eigenvalues[i] > cut_b) {
                ib.push_back(i);
                log_b.push_back(std::log(sb.eigenvalues[i]));
            }
        }
        log_overlap.assign(ia.size(), std::vector<double>(ib.size()));
        for (std::size_t i = 0; i < ia.size(); ++i)
            for (std::size_t j = 0; j < ib.size(); ++j) {
                complexd ov = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    ov += std::conj(sa.eigenvectors(k, ia[i])) *
                          sb.eigenvectors(k, ib[j]);
                const double o2 = std::norm(ov);
                log_overlap[i][j] = o2 > 1e-300
                                        ? std::log(o2)
                                        : -std::numeric_limits<double>::infinity();
            }
    }

    // log Tr A^alpha B^{1-alpha}
    double log_trace(double alpha) const {
        std::vector<double> terms;
        terms.reserve(log_a.size() * log_b.size());
        for (std::size_t i = 0; i < log_a.size(); ++i)
            for (std::size_t j = 0; j < log_b.size(); ++j) {
                const double lo = log_overlap[i][j];
                if (!std::isfinite(lo)) continue;
                terms.push_back(alpha * log_a[i] + (1.0 - alpha) * log_b[j] + lo);
            }
        return logsumexp(terms);
    }
};

// log Tr M^alpha from the positive spectrum of M.
double log_trace_power(const std::vector<double>& eigenvalues, double alpha) {
    double hi = 0.0;
    for (double v : eigenvalues) hi = std::max(hi, std::abs(v));
    const double cut = config().eig_zero_tol * hi;
    std::vector<double> terms;
    for (double v : eigenvalues)
        if (v > cut) terms.push_back(alpha * std::log(v));
    return logsumexp(terms);
}

}  // namespace

DivergenceValue petz_renyi(double alpha, const PsdMatrix& a, const PsdMatrix& b) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("petz_renyi: alpha outside (0,1)");
    require_nonzero(a, "petz_renyi");
    require_nonzero(b, "petz_renyi");
    const PetzCache cache(a.mat(), b.mat());
    const double lt = cache.log_trace(alpha);
    if (!std::isfinite(lt)) return {ExtReal::infinity()};  // disjoint supports
    return {ExtReal(lt / (alpha - 1.0))};
}

namespace {

// Sandwiched divergence through a cached decomposition of B.
struct SandwichCache {
    Mat a;
    SpectralDecomposition sb;
    double cut_b;
    bool supported;

    SandwichCache(const PsdMatrix& a_in, const PsdMatrix& b_in) : a(a_in.mat()) {
        sb = eigh(b_in.mat());
        cut_b = config().eig_zero_tol *
                std::max(std::abs(sb.eigenvalues.back()),
                         std::abs(sb.eigenvalues.front()));
        supported = support_contained(a_in.mat(), b_in.mat());
    }

    // D*_alpha for alpha > 1; +inf when supp A is not inside supp B.
    ExtReal operator()(double alpha) const {
        if (!supported) return ExtReal::infinity();
        const std::size_t n = a.rows();
        std::vector<double> powered(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (sb.eigenvalues[i] > cut_b)
                powered[i] = std::pow(sb.eigenvalues[i], (1.0 - alpha) / (2.0 * alpha));
        Mat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                complexd s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += sb.eigenvectors(i, k) * powered[k] *
                         std::conj(sb.eigenvectors(j, k));
                g(i, j) = s;
            }
        Mat m = g * a * g;
        m.hermitize();
        const double lt = log_trace_power(eigh(m).eigenvalues, alpha);
        if (!std::isfinite(lt)) return ExtReal::infinity();
        return ExtReal(lt / (alpha - 1.0));
    }

    // D*_inf = Dmax = log lambda_max(B^{-1/2} A B^{-1/2}).
    ExtReal dmax() const {
        if (!supported) return ExtReal::infinity();
        const std::size_t n = a.rows();
        std::vector<double> inv_root(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (sb.eigenvalues[i] > cut_b)
                inv_root[i] = 1.0 / std::sqrt(sb.eigenvalues[i]);
        Mat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                complexd s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += sb.eigenvectors(i, k) * inv_root[k] *
                         std::conj(sb.eigenvectors(j, k));
                g(i, j) = s;
            }
        Mat m = g * a * g;
        m.hermitize();
        const double top = lambda_max(m);
        return top > 0.0 ? ExtReal(std::log(top)) : ExtReal::neg_infinity();
    }
};

}  // namespace

DivergenceValue sandwiched_renyi(double alpha, const PsdMatrix& a,
                                 const PsdMatrix& b) {
    if (!(alpha > 1.0)) throw DomainError("sandwiched_renyi: alpha must exceed 1");
    require_nonzero(a, "sandwiched_renyi");
    require_nonzero(b, "sandwiched_renyi");
    return {SandwichCache(a, b)(alpha)};
}

DivergenceValue relative_entropy(const PsdMatrix& a, const PsdMatrix& b) {
    require_nonzero(a, "relative_entropy");
    require_nonzero(b, "relative_entropy");
    if (!support_contained(a.mat(), b.mat())) return {ExtReal::infinity()};
    const auto sa = eigh(a.mat());
    const double cut_a = config().eig_zero_tol * std::abs(sa.eigenvalues.back());
    double tr_a_log_a = 0.0;
    for (double lam : sa.eigenvalues)
        if (lam > cut_a) tr_a_log_a += lam * std::log(lam);
    const auto sb = eigh(b.mat());
    const double cut_b = config().eig_zero_tol * std::abs(sb.eigenvalues.back());
    double tr_a_log_b = 0.0;
    for (std::size_t j = 0; j < sb.eigenvalues.size(); ++j) {
        if (sb.eigenvalues[j] <= cut_b) continue;  // weight ~0 there: 0*log0 = 0
        std::vector<complexd> v(sb.eigenvalues.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = sb.eigenvectors(i, j);
        tr_a_log_b += a.mat().quadratic_form(v) * std::log(sb.eigenvalues[j]);
    }
    return {ExtReal(tr_a_log_a - tr_a_log_b)};
}

MaxRelEntropyResult max_relative_entropy(const PsdMatrix& a, const PsdMatrix& b) {
    require_nonzero(a, "max_relative_entropy");
    require_nonzero(b, "max_relative_entropy");
    const auto jd = joint_diagonalize({a.mat(), b.mat()}, config().commute_tol);
    const std::size_t d = jd.basis.rows();
    double max_a = 0.0, max_b = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        max_a = std::max(max_a, jd.eigenvalues[0][i]);
        max_b = std::max(max_b, jd.eigenvalues[1][i]);
    }
    const double cut_a = config().eig_zero_tol * max_a;
    const double cut_b = config().eig_zero_tol * max_b;

    MaxRelEntropyResult out;
    std::vector<std::size_t> violators;
    for (std::size_t i = 0; i < d; ++i)
        if (jd.eigenvalues[0][i] > cut_a && jd.eigenvalues[1][i] <= cut_b)
            violators.push_back(i);
    if (!violators.empty()) {
        out.value = {ExtReal::infinity()};
        out.argmax_set = violators;
        out.r_inf = ExtReal::infinity();
        return out;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d; ++i) {
        if (jd.eigenvalues[1][i] <= cut_b) continue;
        const double rho = std::max(0.0, jd.eigenvalues[0][i]);
        best = std::max(best, rho / jd.eigenvalues[1][i]);
    }
    double sigma_mass = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (jd.eigenvalues[1][i] <= cut_b) continue;
        const double rho = std::max(0.0, jd.eigenvalues[0][i]);
        if (rho / jd.eigenvalues[1][i] >= best * (1.0 - 1e-9)) {
            out.argmax_set.push_back(i);
            sigma_mass += jd.eigenvalues[1][i];
        }
    }
    out.value = {best > 0.0 ? ExtReal(std::log(best)) : ExtReal::neg_infinity()};
    out.r_inf = -ext_log(ExtReal(sigma_mass));
    return out;
}

SupResult grid_golden_max(const std::function<double(double)>& phi, double lo,
                          double hi, int grid_points, double tol) {
    SupResult best{-std::numeric_limits<double>::infinity(), lo};
    auto probe = [&](double x) {
        const double v = phi(x);
        if (v > best.value) {
            best.value = v;
            best.arg = x;
        }
        return v;
    };
    const double h = (hi - lo) / grid_points;
    int best_idx = 0;
    double best_grid = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + h * (i + 0.5);
        const double v = probe(x);
        if (v > best_grid) {
            best_grid = v;
            best_idx = i;
        }
    }
    // Golden-section on the bracket around the best cell.
    double a = lo + h * std::max(0.0, best_idx - 0.5);
    double b = lo + h * std::min<double>(grid_points, best_idx + 1.5);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = probe(x1), f2 = probe(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = probe(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = probe(x1);
        }
    }
    best.at_lo = best.arg <= lo + h;
    best.at_hi = best.arg >= hi - h;
    return best;
}

namespace {

// Shared Legendre-type supremum for the anti-divergence, parametrized by
// u = (alpha-1)/alpha in (0,1). `div` evaluates D*_alpha, `dmax` its
// alpha -> infinity limit. The supremum over the open interval equals the max
// over the closure by continuity; boundary limits are u=0 -> 0 and
// u=1 -> r - dmax.
HoeffdingResult hoeffding_star_engine(double r,
                                      const std::function<ExtReal(double)>& div,
                                      ExtReal dmax) {
    HoeffdingResult out;
    out.grid_resolution = 1.0 / kGridPoints;
    if (div(2.0).is_pos_inf()) {
        // Support failure: the objective is -inf for every alpha > 1.
        out.value = ExtReal::neg_infinity();
        out.maximizer_alpha = 1.0;
        return out;
    }
    auto phi = [&](double u) {
        const double alpha = 1.0 / (1.0 - u);
        const ExtReal d = div(alpha);
        if (d.is_pos_inf()) return -std::numeric_limits<double>::infinity();
        return u * (r - d.raw());
    };
    const SupResult s = grid_golden_max(phi, 0.0, 1.0, kGridPoints, kGoldenTol);
    double value = s.value;
    out.maximizer_alpha = 1.0 / (1.0 - s.arg);
    // Boundary limits.
    if (0.0 >= value) {
        value = 0.0;
        out.maximizer_alpha = 1.0;
    }
    if (!dmax.is_pos_inf()) {
        const double at_one = r - dmax.raw();
        if (at_one >= value) {
            value = at_one;
            out.maximizer_alpha = std::numeric_limits<double>::infinity();
            out.maximizer_alpha_infinite = true;
        }
    }
    if (s.at_hi && !out.maximizer_alpha_infinite && !dmax.is_pos_inf() &&
        r - dmax.raw() >= value - 1e-12) {
        out.maximizer_alpha_infinite = true;
        out.maximizer_alpha = std::numeric_limits<double>::infinity();
    }
    out.value = ExtReal(value);
    return out;
}

// Direct-exponent supremum over alpha in (0,1). `d0` is the alpha -> 0 limit
// of D_alpha; the objective diverges to +inf there iff r < d0.
HoeffdingResult hoeffding_engine(double r,
                                 const std::function<ExtReal(double)>& div,
                                 ExtReal d0) {
    HoeffdingResult out;
    out.grid_resolution = 1.0 / kGridPoints;
    if (div(0.5).is_pos_inf()) {
        // Disjoint supports: perfect discrimination at any rate.
        out.value = ExtReal::infinity();
        out.maximizer_alpha = 0.5;
        return out;
    }
    if (ExtReal(r) < d0) {
        out.value = ExtReal::infinity();
        out.maximizer_alpha = 0.0;
        return out;
    }
    auto phi = [&](double alpha) {
        const ExtReal d = div(alpha);
        if (d.is_pos_inf()) return std::numeric_limits<double>::infinity();
        return (alpha - 1.0) / alpha * (r - d.raw());
    };
    const SupResult s = grid_golden_max(phi, 0.0, 1.0, kGridPoints, kGoldenTol);
    double value = s.value;
    out.maximizer_alpha = s.arg;
    if (0.0 >= value) {  // alpha -> 1 limit
        value = 0.0;
        out.maximizer_alpha = 1.0;
    }
    out.value = ExtReal(value);
    return out;
}

}  // namespace

HoeffdingResult hoeffding(double r, const PsdMatrix& a, const PsdMatrix& b) {
    if (!std::isfinite(r)) throw DomainError("hoeffding: r must be finite");
    require_nonzero(a, "hoeffding");
    require_nonzero(b, "hoeffding");
    const PetzCache cache(a.mat(), b.mat());
    auto div = [&cache](double alpha) -> ExtReal {
        const double lt = cache.log_trace(alpha);
        if (!std::isfinite(lt)) return ExtReal::infinity();
        return ExtReal(lt / (alpha - 1.0));
    };
    // D_0 = -log Tr A^0 B.
    const Mat pa = support_proj(a.mat());
    const double mass = (pa * b.mat()).trace().real();
    const ExtReal d0 = -ext_log(ExtReal(std::max(0.0, mass)));
    return hoeffding_engine(r, div, d0);
}

HoeffdingResult hoeffding_star(double r, const PsdMatrix& a, const PsdMatrix& b) {
    if (!std::isfinite(r)) throw DomainError("hoeffding_star: r must be finite");
    require_nonzero(a, "hoeffding_star");
    require_nonzero(b, "hoeffding_star");
    const SandwichCache cache(a, b);
    auto div = [&cache](double alpha) { return cache(alpha); };
    return hoeffding_star_engine(r, div, cache.dmax());
}

// ---------------------------------------------------------------------------
// Commuting layer.

namespace {

struct PmfCuts {
    double p, q;
};

PmfCuts pmf_cuts(const WeightedPmfPair& pq) {
    double mp = 0.0, mq = 0.0;
    for (double v : pq.p) mp = std::max(mp, v);
    for (double v : pq.q) mq = std::max(mq, v);
    return {config().eig_zero_tol * mp, config().eig_zero_tol * mq};
}

bool pmf_support_violation(const WeightedPmfPair& pq) {
    const auto cuts = pmf_cuts(pq);
    for (std::size_t i = 0; i < pq.p.size(); ++i)
        if (pq.p[i] > cuts.p && pq.q[i] <= cuts.q) return true;
    return false;
}

}  // namespace

ExtReal classical_renyi(double alpha, const WeightedPmfPair& pq) {
    const auto cuts = pmf_cuts(pq);
    if (alpha > 1.0 && pmf_support_violation(pq)) return ExtReal::infinity();
    std::vector<double> terms;
    for (std::size_t i = 0; i < pq.p.size(); ++i) {
        if (pq.p[i] <= cuts.p || pq.q[i] <= cuts.q) continue;
        terms.push_back(std::log(pq.weight[i]) + alpha * std::log(pq.p[i]) +
                        (1.0 - alpha) * std::log(pq.q[i]));
    }
    const double lt = logsumexp(terms);
    if (!std::isfinite(lt)) return ExtReal::infinity();  // disjoint supports
    return ExtReal(lt / (alpha - 1.0));
}

ExtReal classical_kl(const WeightedPmfPair& pq) {
    if (pmf_support_violation(pq)) return ExtReal::infinity();
    const auto cuts = pmf_cuts(pq);
    double s = 0.0;
    for (std::size_t i = 0; i < pq.p.size(); ++i) {
        if (pq.p[i] <= cuts.p) continue;
        s += pq.weight[i] * pq.p[i] * (std::log(pq.p[i]) - std::log(pq.q[i]));
    }
    return ExtReal(s);
}

ExtReal classical_dmax(const WeightedPmfPair& pq) {
    if (pmf_support_violation(pq)) return ExtReal::infinity();
    const auto cuts = pmf_cuts(pq);
    double best = 0.0;
    for (std::size_t i = 0; i < pq.p.size(); ++i)
        if (pq.p[i] > cuts.p) best = std::max(best, pq.p[i] / pq.q[i]);
    return best > 0.0 ? ExtReal(std::log(best)) : ExtReal::neg_infinity();
}

ExtReal classical_d0(const WeightedPmfPair& pq) {
    const auto cuts = pmf_cuts(pq);
    double mass = 0.0;
    for (std::size_t i = 0; i < pq.p.size(); ++i)
        if (pq.p[i] > cuts.p) mass += pq.weight[i] * pq.q[i];
    return -ext_log(ExtReal(mass));
}

HoeffdingResult classical_hoeffding_star(double r, const WeightedPmfPair& pq) {
    auto div = [&pq](double alpha) { return classical_renyi(alpha, pq); };
    return hoeffding_star_engine(r, div, classical_dmax(pq));
}

HoeffdingResult classical_hoeffding(double r, const WeightedPmfPair& pq) {
    auto div = [&pq](double alpha) { return classical_renyi(alpha, pq); };
    return hoeffding_engine(r, div, classical_d0(pq));
}

}  // namespace opmean

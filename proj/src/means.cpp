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

#include "opmean/means.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "opmean/config.hpp"

namespace opmean {

namespace {

void validate_scalar_fn(const ScalarFn& f) {
    for (double x : {1e-4, 1e-2, 0.5, 1.0, 3.0, 1e2, 1e4}) {
        if (!std::isfinite(f.eval(x)))
            throw DomainError("ScalarFn '" + f.label + "' not finite at sample point");
    }
    // A declared finite limit must be consistent with the evaluator near the
    // boundary: either the far probe already sits within 5%, or the probes
    // are still approaching the declaration (slow limits such as x^{t-1}
    // with t near 1 never reach 5% at any fixed probe).
    auto consistent = [](double near_probe, double far_probe, double lim) {
        const double far_err = std::abs(far_probe - lim);
        if (far_err <= 0.05 * std::max(1.0, std::abs(lim)) + 1e-2) return true;
        const double near_err = std::abs(near_probe - lim);
        return far_err <= near_err * 0.8;
    };
    if (f.limit_at_zero.is_finite() &&
        !consistent(f.eval(1e-3), f.eval(1e-6), f.limit_at_zero.finite()))
        throw DomainError("ScalarFn '" + f.label + "': limit_at_zero inconsistent");
    if (f.transpose_limit_at_zero.is_finite() &&
        !consistent(f.eval(1e3) / 1e3, f.eval(1e6) / 1e6,
                    f.transpose_limit_at_zero.finite()))
        throw DomainError("ScalarFn '" + f.label +
                          "': transpose_limit_at_zero inconsistent");
}

ScalarFn make_fn(std::function<double(double)> eval, ExtReal at_zero,
                 ExtReal transpose_at_zero, std::string label) {
    ScalarFn f{std::move(eval), at_zero, transpose_at_zero, std::move(label)};
    validate_scalar_fn(f);
    return f;
}

}  // namespace

ScalarFn ScalarFn::power(double t) {
    std::ostringstream lbl;
    lbl << "pow:" << t;
    const ExtReal at_zero = t > 0 ? ExtReal(0.0)
                            : t == 0 ? ExtReal(1.0)
                                     : ExtReal::infinity();
    // lim x^t / x: finite iff t <= 1.
    const ExtReal trans = t < 1 ? ExtReal(0.0)
                          : t == 1 ? ExtReal(1.0)
                                   : ExtReal::infinity();
    return make_fn([t](double x) { return std::pow(x, t); }, at_zero, trans,
                   lbl.str());
}

ScalarFn ScalarFn::log() {
    return make_fn([](double x) { return std::log(x); }, ExtReal::neg_infinity(),
                   ExtReal(0.0), "log");
}

ScalarFn ScalarFn::xlogx() {
    return make_fn([](double x) { return x * std::log(x); }, ExtReal(0.0),
                   ExtReal::infinity(), "xlogx");
}

ScalarFn ScalarFn::by_name(const std::string& name) {
    if (name == "log") return log();
    if (name == "xlogx") return xlogx();
    if (name == "sqrt") return sqrt();
    if (name.rfind("pow:", 0) == 0) {
        const std::string arg = name.substr(4);
        std::size_t pos = 0;
        double t = 0.0;
        try {
            t = std::stod(arg, &pos);
        } catch (const std::exception&) {
            throw InputError("unknown scalar function '" + name + "'", "f");
        }
        if (pos != arg.size())
            throw InputError("unknown scalar function '" + name + "'", "f");
        return power(t);
    }
    throw InputError("unknown scalar function '" + name + "'", "f");
}

WeightedFamily::WeightedFamily(std::vector<PsdMatrix> m, std::vector<double> w)
    : members(std::move(m)), weights(std::move(w)) {
    if (members.empty()) throw DimensionError("WeightedFamily: empty family");
    if (members.size() != weights.size())
        throw DimensionError("WeightedFamily: member/weight count mismatch");
    const std::size_t d = members.front().dim();
    double sum = 0.0;
    for (const auto& x : members)
        if (x.dim() != d) throw DimensionError("WeightedFamily: mixed dimensions");
    for (double wy : weights) {
        if (wy < 0.0) throw DomainError("WeightedFamily: negative weight");
        sum += wy;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DomainError("WeightedFamily: weights do not sum to 1");
}

std::vector<double> default_eps_path() {
    std::vector<double> path;
    for (int k = 1; k <= 12; ++k) path.push_back(std::pow(10.0, -k));
    return path;
}

Mat perspective(const ScalarFn& f, const Mat& a, const Mat& b,
                const std::vector<double>& eps_path) {
    if (a.rows() != b.rows() || !a.is_square())
        throw DimensionError("perspective: dimension mismatch");
    if (eps_path.empty()) throw DomainError("perspective: empty epsilon path");
    const std::size_t n = a.rows();
    const Mat id = Mat::identity(n);
    Mat prev;
    bool have_prev = false;
    double residual = 0.0;
    for (double eps : eps_path) {
        Mat areg = a + eps * id;
        Mat breg = b + eps * id;
        // The regularized operands are positive definite with spectrum at
        // least eps, so clamping there only strips rounding noise; no support
        // cutoff may interfere with the limit.
        const Mat broot =
            mat_fn_full(breg, [eps](double x) { return std::sqrt(std::max(x, eps)); });
        const Mat brinv = mat_fn_full(
            breg, [eps](double x) { return 1.0 / std::sqrt(std::max(x, eps)); });
        Mat inner = brinv * areg * brinv;
        inner.hermitize();
        const double inner_floor = eps / (lambda_max(breg) + eps);
        Mat cur = broot *
                  mat_fn_full(inner,
                              [&](double x) { return f.eval(std::max(x, inner_floor)); }) *
                  broot;
        cur.hermitize();
        if (have_prev) {
            residual = (cur - prev).frobenius_norm();
            if (residual < config().persp_tol) return cur;
        }
        prev = std::move(cur);
        have_prev = true;
    }
    throw ConvergenceError(
        "perspective: epsilon path did not certify convergence for '" + f.label +
            "'",
        residual);
}

PsdMatrix ka_mean(const PsdMatrix& a, const PsdMatrix& b, double t) {
    if (a.dim() != b.dim()) throw DimensionError("ka_mean: dimension mismatch");
    if (t < 0.0 || t > 1.0) throw DomainError("ka_mean: t outside [0,1]");
    if (t == 0.0) return b;
    if (t == 1.0) return a;
    const Mat m = acc_part(b.mat(), a.mat());   // acc(B|A)
    const Mat nn = acc_part(a.mat(), b.mat());  // acc(A|B)
    // Cutoff floor at the scale of the input pair, so an all-noise
    // absolutely continuous part (disjoint supports) collapses cleanly to 0.
    const double pair_scale = std::max(lambda_max(a.mat()), lambda_max(b.mat()));
    const double floor = config().eig_zero_tol * pair_scale;
    const Mat mroot = mat_pow(m, 0.5, floor);
    const Mat minv = mat_pow(m, -0.5, floor);
    Mat out = mroot * mat_pow(minv * nn * minv, t) * mroot;
    out.hermitize();
    return PsdMatrix::trusted(std::move(out));
}

PsdMatrix alt_mean(AltMeanKind kind, const PsdMatrix& a, const PsdMatrix& b,
                   double t, double z) {
    if (a.dim() != b.dim()) throw DimensionError("alt_mean: dimension mismatch");
    if (t <= 0.0 || t >= 1.0) throw DomainError("alt_mean: t outside (0,1)");
    if (kind != AltMeanKind::LogEuclid && z <= 0.0)
        throw DomainError("alt_mean: z must be positive");
    switch (kind) {
        case AltMeanKind::G: {
            const Mat ap = mat_pow(a, t / (2.0 * z));
            Mat out = mat_pow(ap * mat_pow(b, (1.0 - t) / z) * ap, z);
            return PsdMatrix::trusted(std::move(out));
        }
        case AltMeanKind::Gtilde: {
            const Mat bp = mat_pow(b, (1.0 - t) / (2.0 * z));
            Mat out = mat_pow(bp * mat_pow(a, t / z) * bp, z);
            return PsdMatrix::trusted(std::move(out));
        }
        case AltMeanKind::Ghat: {
            const PsdMatrix ap = PsdMatrix::trusted(mat_pow(a, 1.0 / z));
            const PsdMatrix bp = PsdMatrix::trusted(mat_pow(b, 1.0 / z));
            return PsdMatrix::trusted(mat_pow(ka_mean(ap, bp, t), z));
        }
        case AltMeanKind::LogEuclid: {
            const double cut_a = config().eig_zero_tol * std::max(1.0, lambda_max(a));
            const double cut_b = config().eig_zero_tol * std::max(1.0, lambda_max(b));
            if (lambda_min(a) <= cut_a || lambda_min(b) <= cut_b)
                throw DomainError("alt_mean: LogEuclid requires positive definite input");
            Mat s = mat_fn_full(a, [cut_a](double x) {
                return std::log(std::max(x, cut_a));
            });
            s *= complexd(t);
            Mat sb = mat_fn_full(b, [cut_b](double x) {
                return std::log(std::max(x, cut_b));
            });
            sb *= complexd(1.0 - t);
            s += sb;
            return PsdMatrix::trusted(
                mat_fn_full(s, [](double x) { return std::exp(x); }));
        }
    }
    throw DomainError("alt_mean: unknown kind");
}

JointDiagonalization joint_diagonalize(const std::vector<Mat>& members,
                                       double commute_tol) {
    if (members.empty()) throw DimensionError("joint_diagonalize: empty family");
    const std::size_t d = members.front().rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const Mat comm = members[i] * members[j] - members[j] * members[i];
            worst = std::max(worst, comm.frobenius_norm());
        }
    if (worst > commute_tol)
        throw PreconditionError("joint_diagonalize: family does not commute", worst);

    // Random real linear combination; retry if an accidental degeneracy
    // leaves visible off-diagonal residuals.
    std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Mat combo(d, d);
        for (const auto& m : members) {
            const double c = std::uniform_real_distribution<double>(0.5, 1.5)(gen);
            Mat term = m;
            term *= complexd(c);
            combo += term;
        }
        const auto sd = eigh(combo);
        double resid = 0.0;
        JointDiagonalization out;
        out.basis = sd.eigenvectors;
        out.eigenvalues.resize(members.size());
        for (std::size_t y = 0; y < members.size(); ++y) {
            const Mat rotated = members[y].compress(out.basis);
            double scale = std::max(1.0, rotated.frobenius_norm());
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    if (i != j) resid = std::max(resid, std::abs(rotated(i, j)) / scale);
            out.eigenvalues[y].resize(d);
            for (std::size_t i = 0; i < d; ++i)
                out.eigenvalues[y][i] = rotated(i, i).real();
        }
        if (resid <= 1e-7) return out;
    }
    throw NumericalDegeneracyError(
        "joint_diagonalize: residuals persisted over retries");
}

PsdMatrix commuting_gm(const WeightedFamily& family) {
    std::vector<Mat> mats;
    mats.reserve(family.members.size());
    for (const auto& m : family.members) mats.push_back(m.mat());
    const auto jd = joint_diagonalize(mats, config().commute_tol);
    const std::size_t d = jd.basis.rows();

    std::vector<double> cut(family.members.size());
    for (std::size_t y = 0; y < cut.size(); ++y) {
        double hi = 0.0;
        for (double v : jd.eigenvalues[y]) hi = std::max(hi, std::abs(v));
        cut[y] = config().eig_zero_tol * hi;
    }

    std::vector<double> gm(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        ExtReal acc(0.0);
        for (std::size_t y = 0; y < family.members.size(); ++y) {
            const double w = family.weights[y];
            if (w == 0.0) continue;  // zero weight: factor 1 (0^0 convention)
            const double lam = std::max(0.0, jd.eigenvalues[y][i]);
            acc = acc + ExtReal(w) * ext_log(lam <= cut[y] ? ExtReal(0.0) : ExtReal(lam));
        }
        gm[i] = ext_exp(acc).raw();  // finite: weights sum to 1, values bounded
    }
    Mat diag = Mat::diag(gm);
    Mat out = jd.basis * diag * jd.basis.adjoint();
    out.hermitize();
    return PsdMatrix::trusted(std::move(out));
}

}  // namespace opmean

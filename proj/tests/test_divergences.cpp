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

#include <doctest.h>

#include <cmath>

#include "opmean/divergences.hpp"
#include "opmean/random.hpp"
#include "testutil.hpp"

using namespace opmean;
using namespace opmean::test;

namespace {

const double kLog2Sqrt3 = std::log(2.0 / std::sqrt(3.0));

PsdMatrix rho_half() { return psd_diag({0.5, 0.5}); }
PsdMatrix sigma_one() { return psd_diag({0.25, 0.75}); }

}  // namespace

TEST_CASE("petz renyi divergence") {
    CHECK(petz_renyi(0.5, rho_half(), rho_half()).value.raw() ==
          doctest::Approx(0.0).epsilon(1e-12));
    // alpha -> 1 limits bracket the relative entropy log(2/sqrt(3)).
    const double lo = petz_renyi(1.0 - 1e-5, rho_half(), sigma_one()).value.raw();
    const double hi = sandwiched_renyi(1.0 + 1e-5, rho_half(), sigma_one()).value.raw();
    CHECK(lo == doctest::Approx(kLog2Sqrt3).epsilon(1e-3));
    CHECK(hi == doctest::Approx(kLog2Sqrt3).epsilon(1e-3));
    CHECK(lo <= kLog2Sqrt3 + 1e-12);
    CHECK(hi >= kLog2Sqrt3 - 1e-12);
    // Disjoint supports.
    CHECK(petz_renyi(0.5, psd_diag({1.0, 0.0}), psd_diag({0.0, 1.0}))
              .value.is_pos_inf());
    CHECK_THROWS_AS(petz_renyi(1.5, rho_half(), sigma_one()), DomainError);
    CHECK_THROWS_AS(petz_renyi(0.5, psd_diag({0.0, 0.0}), sigma_one()), DomainError);
}

TEST_CASE("sandwiched renyi divergence") {
    CHECK(sandwiched_renyi(2.0, rho_half(), rho_half()).value.raw() ==
          doctest::Approx(0.0).epsilon(1e-12));
    // Commuting alpha = 2: log sum rho^2/sigma = log(4/3).
    CHECK(sandwiched_renyi(2.0, rho_half(), sigma_one()).value.raw() ==
          doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
    // Support violation.
    CHECK(sandwiched_renyi(2.0, psd_diag({0.5, 0.5}), psd_diag({1.0, 0.0}))
              .value.is_pos_inf());
    CHECK_THROWS_AS(sandwiched_renyi(0.8, rho_half(), sigma_one()), DomainError);
}

TEST_CASE("relative entropy") {
    CHECK(relative_entropy(rho_half(), rho_half()).value.raw() ==
          doctest::Approx(0.0).epsilon(1e-13));
    CHECK(relative_entropy(rho_half(), sigma_one()).value.raw() ==
          doctest::Approx(kLog2Sqrt3).epsilon(1e-12));
    CHECK(relative_entropy(rho_half(), psd_diag({1.0, 0.0})).value.is_pos_inf());
    // Non-commuting sanity: Klein inequality D >= 0 for density pairs.
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const PsdMatrix a = rng.density(3);
        const PsdMatrix b = rng.density(3, 3);
        CHECK(relative_entropy(a, b).value.raw() >= -1e-10);
    }
}

TEST_CASE("max relative entropy") {
    SUBCASE("identical states") {
        const auto res = max_relative_entropy(rho_half(), rho_half());
        CHECK(res.value.value.raw() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(res.argmax_set.size() == 2);  // full support ties
        CHECK(res.r_inf.raw() == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("binary example") {
        const auto res = max_relative_entropy(rho_half(), sigma_one());
        CHECK(res.value.value.raw() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        REQUIRE(res.argmax_set.size() == 1);
        CHECK(res.r_inf.raw() == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    }
    SUBCASE("two copies of the two-alternative instance") {
        const Mat rho2 = kron_power(rho_half().mat(), 2);
        Mat sig2 = kron_power(sigma_one().mat(), 2);
        sig2 += kron_power(psd_diag({0.75, 0.25}).mat(), 2);
        sig2 *= complexd(0.5);
        const auto res = max_relative_entropy(PsdMatrix::trusted(rho2),
                                              PsdMatrix::trusted(sig2));
        CHECK(res.value.value.raw() ==
              doctest::Approx(2.0 * kLog2Sqrt3).epsilon(1e-12));
        const double want_rinf =
            2.0 * std::log(4.0 / std::sqrt(3.0)) - std::log(2.0);
        CHECK(res.r_inf.raw() == doctest::Approx(want_rinf).epsilon(1e-12));
    }
    SUBCASE("support violation") {
        const auto res = max_relative_entropy(rho_half(), psd_diag({1.0, 0.0}));
        CHECK(res.value.value.is_pos_inf());
        CHECK(res.r_inf.is_pos_inf());
    }
    SUBCASE("non-commuting input is rejected") {
        Rng rng(32);
        CHECK_THROWS_AS(max_relative_entropy(rng.psd(2), rng.psd(2)),
                        PreconditionError);
    }
}

namespace {

// Independent coarse oracle for the classical Hoeffding anti-divergence on a
// plain binary pair: direct alpha sweep of the defining formula.
double hstar_oracle(double r, const std::vector<double>& p,
                    const std::vector<double>& q) {
    double best = 0.0;  // alpha -> 1 limit
    for (int i = 1; i <= 200000; ++i) {
        const double u = i / 200001.0;
        const double alpha = 1.0 / (1.0 - u);
        double z = 0.0;
        for (std::size_t x = 0; x < p.size(); ++x)
            z += std::pow(p[x], alpha) * std::pow(q[x], 1.0 - alpha);
        const double d = std::log(z) / (alpha - 1.0);
        best = std::max(best, u * (r - d));
    }
    // alpha -> infinity limit.
    double ratio = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0) ratio = std::max(ratio, p[x] / q[x]);
    best = std::max(best, r - std::log(ratio));
    return best;
}

}  // namespace

TEST_CASE("hoeffding transforms") {
    SUBCASE("identical states") {
        const auto h = hoeffding(0.7, rho_half(), rho_half());
        CHECK(h.value.raw() == doctest::Approx(0.0));
        CHECK(h.maximizer_alpha == doctest::Approx(1.0));
        const auto hs = hoeffding_star(0.7, rho_half(), rho_half());
        CHECK(hs.value.raw() == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(hs.maximizer_alpha_infinite);
    }
    SUBCASE("constant-divergence pair peaks at alpha -> infinity") {
        const double v = std::sqrt(3.0) / 4.0;
        const PsdMatrix gm_state = psd_diag({v, v});
        const double r = 0.5;
        const auto hs = hoeffding_star(r, rho_half(), gm_state);
        CHECK(hs.value.raw() == doctest::Approx(r - kLog2Sqrt3).epsilon(1e-9));
        CHECK(hs.maximizer_alpha_infinite);
    }
    SUBCASE("value matches an independent alpha sweep") {
        const double r = 0.5;
        const auto hs = hoeffding_star(r, rho_half(), sigma_one());
        const double want = hstar_oracle(r, {0.5, 0.5}, {0.25, 0.75});
        CHECK(hs.value.raw() == doctest::Approx(want).epsilon(1e-6));
    }
    SUBCASE("bracket between r - Dmax and r - D, strict below r_inf") {
        const double d = kLog2Sqrt3;
        const double dmax = std::log(2.0);
        const double rinf = std::log(4.0);
        for (double r : {0.3, 0.7, 1.2}) {
            REQUIRE(r > d);
            REQUIRE(r < rinf);
            const double h = hoeffding_star(r, rho_half(), sigma_one()).value.raw();
            CHECK(h >= r - dmax - 1e-10);
            CHECK(h - (r - dmax) > 1e-6);  // strict since r < r_inf
            CHECK(h < r - d);
        }
        // Above r_inf the lower end of the bracket is attained.
        const double big_r = 2.5;
        const double h = hoeffding_star(big_r, rho_half(), sigma_one()).value.raw();
        CHECK(h == doctest::Approx(big_r - dmax).epsilon(1e-9));
    }
    SUBCASE("disjoint supports make the direct transform infinite") {
        const auto h = hoeffding(0.5, psd_diag({1.0, 0.0}), psd_diag({0.0, 1.0}));
        CHECK(h.value.is_pos_inf());
    }
    SUBCASE("support-deficient alternative can exceed any finite rate") {
        // rho pure on e1, sigma mixed: H_r = +inf for r < -log sigma(1).
        const auto h = hoeffding(0.5, psd_diag({1.0, 0.0}), rho_half());
        CHECK(h.value.is_pos_inf());
        const auto h2 = hoeffding(0.8, psd_diag({1.0, 0.0}), rho_half());
        CHECK(h2.value.is_finite());
    }
}

TEST_CASE("renyi monotonicity and anti-monotonicity") {
    SUBCASE("increasing in alpha on a commuting non-proportional pair") {
        const double d025 = petz_renyi(0.25, rho_half(), sigma_one()).value.raw();
        const double d05 = petz_renyi(0.5, rho_half(), sigma_one()).value.raw();
        const double d1 = relative_entropy(rho_half(), sigma_one()).value.raw();
        const double d2 = sandwiched_renyi(2.0, rho_half(), sigma_one()).value.raw();
        const double d8 = sandwiched_renyi(8.0, rho_half(), sigma_one()).value.raw();
        const double dinf =
            max_relative_entropy(rho_half(), sigma_one()).value.value.raw();
        CHECK(d025 < d05);
        CHECK(d05 < d1);
        CHECK(d1 < d2);
        CHECK(d2 < d8);
        CHECK(d8 < dinf);
    }
    SUBCASE("anti-monotone in the second argument") {
        Rng rng(33);
        for (int rep = 0; rep < 20; ++rep) {
            const PsdMatrix a = rng.density(3);
            const PsdMatrix b = rng.positive_definite(3);
            Mat bigger = b.mat();
            bigger += rng.psd(3).mat();
            const PsdMatrix b2 = PsdMatrix::trusted(std::move(bigger));
            CHECK(petz_renyi(0.5, a, b).value.raw() >=
                  petz_renyi(0.5, a, b2).value.raw() - 1e-9);
            CHECK(sandwiched_renyi(2.0, a, b).value.raw() >=
                  sandwiched_renyi(2.0, a, b2).value.raw() - 1e-9);
        }
    }
}

TEST_CASE("classical weighted layer matches the matrix layer") {
    // k = 1 type classes are just the plain distributions.
    const WeightedPmfPair pq{{1.0, 1.0}, {0.5, 0.5}, {0.25, 0.75}};
    CHECK(classical_renyi(0.5, pq).raw() ==
          doctest::Approx(petz_renyi(0.5, rho_half(), sigma_one()).value.raw())
              .epsilon(1e-12));
    CHECK(classical_renyi(2.0, pq).raw() ==
          doctest::Approx(sandwiched_renyi(2.0, rho_half(), sigma_one()).value.raw())
              .epsilon(1e-12));
    CHECK(classical_kl(pq).raw() == doctest::Approx(kLog2Sqrt3).epsilon(1e-12));
    CHECK(classical_dmax(pq).raw() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const auto hs = classical_hoeffding_star(0.5, pq);
    const auto hs_mat = hoeffding_star(0.5, rho_half(), sigma_one());
    CHECK(hs.value.raw() == doctest::Approx(hs_mat.value.raw()).epsilon(1e-9));
}

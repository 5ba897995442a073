// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "binet/protocol.hpp"
#include "binet/states.hpp"

#include <cmath>

using namespace binet;

TEST_CASE("nme_pure family") {
    // eta = 1/2 is phi+
    const CVec half = nme_pure(0.5);
    CHECK(std::abs(half[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(half[3] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(half[1]) + std::abs(half[2]) == 0.0);

    // eta = 1 is |00>
    const CVec prod = nme_pure(1.0);
    CHECK(std::abs(prod[0] - 1.0) < 1e-15);

    CHECK(entanglement_entropy(nme_pure(0.2)) == doctest::Approx(0.72193).epsilon(1e-5));

    // singlet-based family passes through |psi-> at eta = 1/2
    const CVec s = nme_pure(0.5, BellBase::PsiMinus);
    CHECK(std::abs(s[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(s[2] + 1.0 / std::sqrt(2.0)) < 1e-15);

    CHECK_THROWS_AS((void)nme_pure(1.2), ParamError);
    CHECK_THROWS_AS((void)nme_pure(-0.1), ParamError);
}

TEST_CASE("source_state basic forms") {
    // pure maximally entangled
    const CMat phi = source_state({0.5, 1.0, BellBase::PhiPlus});
    CHECK(max_abs_diff(phi, outer(nme_pure(0.5))) < 1e-15);

    // white noise
    const CMat noise = source_state({0.5, 0.0, BellBase::PhiPlus});
    CHECK(max_abs_diff(noise, add_scaled(0.25, CMat::identity(4), 0.0, noise)) < 1e-15);

    // Werner eigenvalues {0.85, 0.05, 0.05, 0.05}
    const CMat werner = source_state({0.5, 0.8, BellBase::PhiPlus});
    const auto vals = eigvals_hermitian(werner);
    CHECK(vals[0] == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(vals[1] == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(vals[2] == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(vals[3] == doctest::Approx(0.85).epsilon(1e-10));

    CHECK_THROWS_AS((void)source_state({0.5, 1.5, BellBase::PhiPlus}), ParamError);
}

TEST_CASE("source_state trace and positivity across the parameter grid") {
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double eta = i / 20.0;
            const double v = j / 20.0;
            for (BellBase base : {BellBase::PhiPlus, BellBase::PsiMinus}) {
                const CMat rho = source_state({eta, v, base});
                CHECK(std::abs(trace(rho).real() - 1.0) < 1e-12);
                CHECK(is_hermitian(rho));
                const auto vals = eigvals_hermitian(rho);
                for (double lam : vals) CHECK(lam > -1e-12);
            }
        }
}

TEST_CASE("werner eof boundary at v = 1/3") {
    for (double v : {0.0, 0.1, 0.2, 1.0 / 3.0}) {
        CHECK(eof(source_state({0.5, v, BellBase::PhiPlus})) == doctest::Approx(0.0).epsilon(1e-9));
    }
    for (double v : {0.34, 0.5, 0.9}) {
        CHECK(eof(source_state({0.5, v, BellBase::PhiPlus})) > 1e-4);
    }
}

TEST_CASE("pure source has unit purity") {
    for (double eta : {0.0, 0.25, 0.5, 0.8, 1.0}) {
        const CMat rho = source_state({eta, 1.0, BellBase::PhiPlus});
        CHECK(trace(matmul(rho, rho)).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("choice of maximally entangled base does not change B") {
    // Any maximally entangled source pair gives the same violation up to
    // relabeling Bob's outcomes; B itself is label-sum invariant.
    ScenarioConfig a;
    a.alice_rounds = {RoundSpec(kPi / 4.0, 1.0)};
    a.charu_rounds = {RoundSpec(kPi / 4.0, 0.7)};

    ScenarioConfig b = a;
    b.source1 = {0.5, 1.0, BellBase::PsiMinus};
    b.source2 = {0.5, 1.0, BellBase::PsiMinus};

    CHECK(evaluate(a).B == doctest::Approx(evaluate(b).B).epsilon(1e-12));
}

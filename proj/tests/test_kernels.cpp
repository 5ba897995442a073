// SPDX-License-Identifier: Apache-2.0
//
// Scalar/SIMD kernel equivalence. The SIMD variants use FMA so results may
// differ from the reference by rounding; agreement is required to 1e-12 on
// unit-scale random inputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "binet/kernels.hpp"
#include "binet/qmath.hpp"

#include <random>
#include <vector>

using namespace binet;

namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<cplx> random_block(int count, std::mt19937_64& rng) {
    std::vector<cplx> v(static_cast<std::size_t>(count));
    for (auto& x : v) x = cplx(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("scalar kernels: matmul basics") {
    const auto& ops = kernels::table(kernels::Backend::Scalar);
    CMat a = CMat::identity(4);
    CMat b(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b(i, j) = cplx(i + 1, j - 2);
    CMat c(4);
    ops.matmul(4, a.data(), b.data(), c.data());
    CHECK(max_abs_diff(b, c) == 0.0);
}

TEST_CASE("scalar kernels: project_mid agrees with kron + sandwich + partial trace") {
    std::mt19937_64 rng(11);
    const auto& ops = kernels::table(kernels::Backend::Scalar);
    for (int rep = 0; rep < 20; ++rep) {
        // random Hermitian 16x16
        CMat h(16);
        auto raw = random_block(256, rng);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                const cplx x = raw[static_cast<std::size_t>(i * 16 + j)];
                h(i, j) = x;
            }
        CMat herm = add_scaled(0.5, h, 0.5, adjoint(h));

        auto evec = random_block(4, rng);
        CVec e(4);
        for (int i = 0; i < 4; ++i) e[i] = evec[static_cast<std::size_t>(i)];
        const double inv = 1.0 / std::sqrt(e.norm2());
        for (int i = 0; i < 4; ++i) e[i] *= inv;

        CMat got(4);
        ops.project_mid(herm.data(), e.data(), got.data());

        // reference route through the full 16x16 projector
        CMat proj = kron(kron(CMat::identity(2), outer(e)), CMat::identity(2));
        CMat sandwiched = matmul(matmul(proj, herm), proj);
        const int keep[] = {0, 3};
        const int dims[] = {2, 2, 2, 2};
        CMat want = partial_trace(sandwiched, keep, dims);
        CHECK(max_abs_diff(got, want) < 1e-11);
    }
}

#if defined(__x86_64__) || defined(__i386__)
TEST_CASE("avx2 kernels match scalar reference") {
    if (!(kernels::avx2_compiled() && kernels::avx2_supported())) {
        MESSAGE("AVX2 unavailable; skipping equivalence checks");
        return;
    }
    const auto& ref = kernels::table(kernels::Backend::Scalar);
    const auto& simd = kernels::table(kernels::Backend::Avx2);
    std::mt19937_64 rng(7);

    SUBCASE("matmul across dimensions") {
        for (int n : {2, 3, 4, 5, 8, 16}) {
            for (int rep = 0; rep < 50; ++rep) {
                auto a = random_block(n * n, rng);
                auto b = random_block(n * n, rng);
                std::vector<cplx> c0(static_cast<std::size_t>(n) * n), c1(static_cast<std::size_t>(n) * n);
                ref.matmul(n, a.data(), b.data(), c0.data());
                simd.matmul(n, a.data(), b.data(), c1.data());
                CHECK(max_diff(c0, c1) < 1e-12);
            }
        }
    }

    SUBCASE("add_scaled") {
        for (int count : {1, 2, 3, 16, 255, 256}) {
            auto a = random_block(count, rng);
            auto b = random_block(count, rng);
            std::vector<cplx> c0(static_cast<std::size_t>(count)), c1(static_cast<std::size_t>(count));
            ref.add_scaled(count, 0.37, a.data(), -1.25, b.data(), c0.data());
            simd.add_scaled(count, 0.37, a.data(), -1.25, b.data(), c1.data());
            CHECK(max_diff(c0, c1) < 1e-13);
        }
    }

    SUBCASE("project_mid") {
        for (int rep = 0; rep < 100; ++rep) {
            auto rho = random_block(256, rng);
            auto e = random_block(4, rng);
            std::vector<cplx> o0(16), o1(16);
            ref.project_mid(rho.data(), e.data(), o0.data());
            simd.project_mid(rho.data(), e.data(), o1.data());
            CHECK(max_diff(o0, o1) < 1e-12);
        }
    }
}
#endif

TEST_CASE("dispatch honors BINET_KERNELS override") {
    // The active backend was resolved at startup; here we only check the
    // explicit tables are self-consistent and named.
    CHECK(std::string(kernels::table(kernels::Backend::Scalar).name) == "scalar");
    const auto& act = kernels::active();
    CHECK((std::string(act.name) == "scalar" || std::string(act.name) == "avx2"));
}

// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variants of the complex kernels. Complex values stay interleaved
// (re,im); a __m256d holds two complex doubles. Complex multiply uses the
// permute/fmaddsub idiom:
//   (ar + i*ai)(br + i*bi) -> fmaddsub(ar, [br,bi], ai*[bi,br])
// which subtracts in even lanes (real parts) and adds in odd lanes.
//
// This translation unit is compiled with -mavx2 -mfma and only dispatched to
// after a runtime CPU check.

#include "kernels_internal.hpp"

#if defined(BINET_HAVE_AVX2)

#include <immintrin.h>

namespace binet::kernels {

namespace {

// c[j..j+1] += a * b[j..j+1] for a scalar complex a and two packed complex.
inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d b) {
    const __m256d bswap = _mm256_permute_pd(b, 0x5);
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap)));
}

// acc += conj(a) * b
inline __m256d cmul_conj_acc(__m256d acc, __m256d ar, __m256d ai, __m256d b) {
    const __m256d bswap = _mm256_permute_pd(b, 0x5);
    return _mm256_add_pd(acc, _mm256_fmsubadd_pd(ar, b, _mm256_mul_pd(ai, bswap)));
}

void matmul_avx2(int n, const cplx* a, const cplx* b, cplx* c) {
    const int nd = 2 * n; // doubles per row
    for (int i = 0; i < n; ++i) {
        double* crow = reinterpret_cast<double*>(c + static_cast<std::size_t>(i) * n);
        int j = 0;
        for (; j + 4 <= nd; j += 4) _mm256_storeu_pd(crow + j, _mm256_setzero_pd());
        for (; j < nd; ++j) crow[j] = 0.0;
        for (int k = 0; k < n; ++k) {
            const cplx aik = a[static_cast<std::size_t>(i) * n + k];
            const __m256d ar = _mm256_set1_pd(aik.real());
            const __m256d ai = _mm256_set1_pd(aik.imag());
            const double* brow =
                reinterpret_cast<const double*>(b + static_cast<std::size_t>(k) * n);
            j = 0;
            for (; j + 4 <= nd; j += 4) {
                const __m256d bv = _mm256_loadu_pd(brow + j);
                __m256d cv = _mm256_loadu_pd(crow + j);
                cv = cmul_acc(cv, ar, ai, bv);
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < nd; j += 2) {
                const double br = brow[j], bi = brow[j + 1];
                crow[j] += aik.real() * br - aik.imag() * bi;
                crow[j + 1] += aik.real() * bi + aik.imag() * br;
            }
        }
    }
}

void add_scaled_avx2(int count, double alpha, const cplx* a, double beta,
                     const cplx* b, cplx* c) {
    const __m256d av = _mm256_set1_pd(alpha);
    const __m256d bv = _mm256_set1_pd(beta);
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    const int nd = 2 * count;
    int i = 0;
    for (; i + 4 <= nd; i += 4) {
        const __m256d x = _mm256_loadu_pd(ad + i);
        const __m256d y = _mm256_loadu_pd(bd + i);
        _mm256_storeu_pd(cd + i, _mm256_fmadd_pd(av, x, _mm256_mul_pd(bv, y)));
    }
    for (; i < nd; ++i) cd[i] = alpha * ad[i] + beta * bd[i];
}

void project_mid_avx2(const cplx* rho16, const cplx* e4, cplx* out4) {
    // Phase 1: contract the column (ket) index against e. tmp[r] holds the
    // four (a',c') amplitudes as two packed vectors.
    __m256d tmp_lo[16];
    __m256d tmp_hi[16];
    __m256d er[4], ei[4];
    for (int g = 0; g < 4; ++g) {
        er[g] = _mm256_set1_pd(e4[g].real());
        ei[g] = _mm256_set1_pd(e4[g].imag());
    }
    for (int r = 0; r < 16; ++r) {
        const double* row = reinterpret_cast<const double*>(rho16 + static_cast<std::size_t>(r) * 16);
        __m256d lo = _mm256_setzero_pd();
        __m256d hi = _mm256_setzero_pd();
        for (int g = 0; g < 4; ++g) {
            // columns (m=0,1) = {2g, 2g+1}; (m=2,3) = {8+2g, 8+2g+1}
            const __m256d blo = _mm256_loadu_pd(row + 4 * g);
            const __m256d bhi = _mm256_loadu_pd(row + 16 + 4 * g);
            lo = cmul_acc(lo, er[g], ei[g], blo);
            hi = cmul_acc(hi, er[g], ei[g], bhi);
        }
        tmp_lo[r] = lo;
        tmp_hi[r] = hi;
    }
    // Phase 2: contract the row (bra) index against conj(e).
    for (int q = 0; q < 4; ++q) {
        const int base = (q >> 1) * 8 + (q & 1);
        __m256d lo = _mm256_setzero_pd();
        __m256d hi = _mm256_setzero_pd();
        for (int g = 0; g < 4; ++g) {
            lo = cmul_conj_acc(lo, er[g], ei[g], tmp_lo[base + 2 * g]);
            hi = cmul_conj_acc(hi, er[g], ei[g], tmp_hi[base + 2 * g]);
        }
        double* orow = reinterpret_cast<double*>(out4 + static_cast<std::size_t>(q) * 4);
        _mm256_storeu_pd(orow, lo);
        _mm256_storeu_pd(orow + 4, hi);
    }
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops{matmul_avx2, add_scaled_avx2, project_mid_avx2, "avx2"};
    return ops;
}

} // namespace binet::kernels

#endif // BINET_HAVE_AVX2

// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. These are the semantics; SIMD variants are
// required to reproduce them within rounding.

#include "binet/kernels.hpp"

namespace binet::kernels {

namespace {

void matmul_scalar(int n, const cplx* a, const cplx* b, cplx* c) {
    for (int i = 0; i < n; ++i) {
        cplx* crow = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) crow[j] = cplx(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
            const cplx aik = a[static_cast<std::size_t>(i) * n + k];
            const cplx* brow = b + static_cast<std::size_t>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

void add_scaled_scalar(int count, double alpha, const cplx* a, double beta,
                       const cplx* b, cplx* c) {
    for (int i = 0; i < count; ++i) c[i] = alpha * a[i] + beta * b[i];
}

void project_mid_scalar(const cplx* rho16, const cplx* e4, cplx* out4) {
    // tmp[r][m] = sum_g' rho[r][col(m,g')] * e[g'],  m = (a'<<1)|c'
    cplx tmp[16][4];
    for (int r = 0; r < 16; ++r) {
        const cplx* row = rho16 + static_cast<std::size_t>(r) * 16;
        for (int m = 0; m < 4; ++m) {
            const int base = (m >> 1) * 8 + (m & 1);
            cplx acc(0.0, 0.0);
            for (int g = 0; g < 4; ++g) acc += row[base + 2 * g] * e4[g];
            tmp[r][m] = acc;
        }
    }
    // out[q][m] = sum_g conj(e[g]) tmp[row(q,g)][m],  q = (a<<1)|c
    for (int q = 0; q < 4; ++q) {
        const int base = (q >> 1) * 8 + (q & 1);
        for (int m = 0; m < 4; ++m) {
            cplx acc(0.0, 0.0);
            for (int g = 0; g < 4; ++g) acc += std::conj(e4[g]) * tmp[base + 2 * g][m];
            out4[q * 4 + m] = acc;
        }
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{matmul_scalar, add_scaled_scalar, project_mid_scalar, "scalar"};
    return ops;
}

} // namespace binet::kernels

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/common.hpp"

namespace binet::kernels {

enum class Backend { Scalar, Avx2 };

// Table of the arithmetic inner loops everything above sits on. All matrices
// are dense row-major std::complex<double>; scalar coefficients are real.
// Every entry has a scalar reference implementation; SIMD variants must agree
// with it to tight tolerance (see tests/test_kernels.cpp).
struct Ops {
    // c = a * b, both n x n.
    void (*matmul)(int n, const cplx* a, const cplx* b, cplx* c);

    // c[i] = alpha*a[i] + beta*b[i] for i < count. Aliasing c==a or c==b is allowed.
    void (*add_scaled)(int count, double alpha, const cplx* a, double beta,
                       const cplx* b, cplx* c);

    // Projects the middle qubit pair of a 4-qubit state onto |e><e| and traces
    // it out:  out[(a,c),(a',c')] = sum_{g,g'} conj(e[g]) rho[(a,g,c),(a',g',c')] e[g'].
    // rho is 16x16 over qubits (A, B1, B2, C) with index a*8 + b1*4 + b2*2 + c;
    // e is a 4-vector on (B1,B2); out is 4x4 over (A, C).
    void (*project_mid)(const cplx* rho16, const cplx* e4, cplx* out4);

    const char* name;
};

// Kernel table for an explicit backend. Throws ConfigError if the backend was
// not compiled in or the CPU lacks it.
const Ops& table(Backend b);

// Backend chosen at startup: AVX2 when compiled in and supported by the CPU,
// unless overridden with BINET_KERNELS=scalar|avx2.
Backend preferred_backend();
const Ops& active();

bool avx2_compiled();
bool avx2_supported();

} // namespace binet::kernels

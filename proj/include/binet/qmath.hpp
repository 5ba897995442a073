// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/common.hpp"

#include <array>
#include <span>
#include <vector>

namespace binet {

// Dense complex matrix with a fixed 16x16 capacity, which covers every
// Hilbert space in this project (2, 4 and 16, plus intermediates from kron).
// Value semantics; copies touch only the dim*dim prefix.
class CMat {
  public:
    static constexpr int kMaxDim = 16;

    CMat() = default;
    explicit CMat(int dim);

    CMat(const CMat& other) { assign(other); }
    CMat& operator=(const CMat& other) {
        if (this != &other) assign(other);
        return *this;
    }

    static CMat identity(int dim);

    int dim() const { return dim_; }
    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * dim_ + j];
    }
    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t size() const { return static_cast<std::size_t>(dim_) * dim_; }

  private:
    void assign(const CMat& other);

    int dim_ = 0;
    std::array<cplx, kMaxDim * kMaxDim> a_{};
};

// Complex vector, capacity 16.
class CVec {
  public:
    static constexpr int kMaxDim = 16;

    CVec() = default;
    explicit CVec(int dim);

    int dim() const { return dim_; }
    cplx& operator[](int i) { return a_[static_cast<std::size_t>(i)]; }
    const cplx& operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }
    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    double norm2() const; // squared 2-norm

  private:
    int dim_ = 0;
    std::array<cplx, kMaxDim> a_{};
};

// --- elementwise / structural operations -----------------------------------

CMat matmul(const CMat& a, const CMat& b);
// alpha*a + beta*b with real coefficients
CMat add_scaled(double alpha, const CMat& a, double beta, const CMat& b);
CMat adjoint(const CMat& a);
cplx trace(const CMat& a);
CMat outer(const CVec& v); // |v><v|
cplx dot(const CVec& a, const CVec& b); // <a|b>

// Standard tensor product: (A (x) B)[i*dB+k, j*dB+l] = A[i,j] B[k,l].
CMat kron(const CMat& a, const CMat& b);
CVec kron(const CVec& a, const CVec& b);

// Trace out every subsystem not listed in `keep`. `dims` are the subsystem
// dimensions in tensor order; `keep` must be non-empty, sorted and in range.
CMat partial_trace(const CMat& rho, std::span<const int> keep, std::span<const int> dims);

// --- numeric checks ----------------------------------------------------------

double max_abs_diff(const CMat& a, const CMat& b);
bool is_hermitian(const CMat& a, double tol = 1e-12);

// --- spectra -----------------------------------------------------------------

// Cyclic complex-Hermitian Jacobi. Eigenvalues ascending; `vectors` (columns)
// optional. Accurate to ~1e-13 for the dimensions used here.
struct EigenSystem {
    std::vector<double> values;
    CMat vectors;
};
EigenSystem eig_hermitian(const CMat& a, bool want_vectors = false);
std::vector<double> eigvals_hermitian(const CMat& a);

// Hermitian PSD square root via eigendecomposition (negative rounding noise
// is clamped to zero).
CMat sqrt_psd(const CMat& a);

// --- entanglement measures ---------------------------------------------------

double binary_entropy(double p); // bits; h(0)=h(1)=0

// von Neumann entropy (bits) of the reduced state of a pure two-qubit state.
// Throws NormalizationError unless ||psi|| = 1 to 1e-9.
double entanglement_entropy(const CVec& psi);

// Wootters entanglement of formation of a two-qubit density matrix:
// C = max(0, l1-l2-l3-l4) with l_i the decreasing square roots of the
// eigenvalues of rho (sy(x)sy) rho* (sy(x)sy); EoF = h((1+sqrt(1-C^2))/2).
// Throws StateError for non-Hermitian / non-unit-trace / non-PSD input.
double concurrence(const CMat& rho);
double eof(const CMat& rho);

} // namespace binet

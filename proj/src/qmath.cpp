// SPDX-License-Identifier: Apache-2.0

#include "binet/qmath.hpp"
#include "binet/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace binet {

CMat::CMat(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw DimensionError("matrix dimension out of range");
}

void CMat::assign(const CMat& other) {
    dim_ = other.dim_;
    std::memcpy(a_.data(), other.a_.data(), other.size() * sizeof(cplx));
}

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CVec::CVec(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw DimensionError("vector dimension out of range");
}

double CVec::norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::norm(a_[static_cast<std::size_t>(i)]);
    return s;
}

CMat matmul(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim()) throw DimensionError("matmul: dimension mismatch");
    CMat c(a.dim());
    kernels::active().matmul(a.dim(), a.data(), b.data(), c.data());
    return c;
}

CMat add_scaled(double alpha, const CMat& a, double beta, const CMat& b) {
    if (a.dim() != b.dim()) throw DimensionError("add_scaled: dimension mismatch");
    CMat c(a.dim());
    kernels::active().add_scaled(static_cast<int>(a.size()), alpha, a.data(), beta,
                                 b.data(), c.data());
    return c;
}

CMat adjoint(const CMat& a) {
    CMat c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

cplx trace(const CMat& a) {
    cplx t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

CMat outer(const CVec& v) {
    CMat m(v.dim());
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

cplx dot(const CVec& a, const CVec& b) {
    if (a.dim() != b.dim()) throw DimensionError("dot: dimension mismatch");
    cplx s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

CMat kron(const CMat& a, const CMat& b) {
    const int da = a.dim(), db = b.dim();
    if (da * db > CMat::kMaxDim) throw DimensionError("kron: product dimension too large");
    CMat c(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            for (int k = 0; k < db; ++k)
                for (int l = 0; l < db; ++l) c(i * db + k, j * db + l) = aij * b(k, l);
        }
    return c;
}

CVec kron(const CVec& a, const CVec& b) {
    const int da = a.dim(), db = b.dim();
    if (da * db > CVec::kMaxDim) throw DimensionError("kron: product dimension too large");
    CVec c(da * db);
    for (int i = 0; i < da; ++i)
        for (int k = 0; k < db; ++k) c[i * db + k] = a[i] * b[k];
    return c;
}

CMat partial_trace(const CMat& rho, std::span<const int> keep, std::span<const int> dims) {
    const int nsub = static_cast<int>(dims.size());
    long long total = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionError("partial_trace: bad subsystem dimension");
        total *= d;
    }
    if (total != rho.dim()) throw DimensionError("partial_trace: dims do not match matrix");
    if (keep.empty()) throw DimensionError("partial_trace: keep list empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= nsub) throw DimensionError("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) throw DimensionError("partial_trace: keep list must be sorted");
    }

    std::vector<int> traced;
    for (int s = 0; s < nsub; ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);

    int dkeep = 1, dtr = 1;
    for (int s : keep) dkeep *= dims[static_cast<std::size_t>(s)];
    for (int s : traced) dtr *= dims[static_cast<std::size_t>(s)];

    // strides of each subsystem in the full index
    std::vector<long long> stride(static_cast<std::size_t>(nsub), 1);
    for (int s = nsub - 2; s >= 0; --s)
        stride[static_cast<std::size_t>(s)] =
            stride[static_cast<std::size_t>(s + 1)] * dims[static_cast<std::size_t>(s + 1)];

    auto expand = [&](int packed, const std::vector<int>& subs) {
        long long idx = 0;
        for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s) {
            const int d = dims[static_cast<std::size_t>(subs[static_cast<std::size_t>(s)])];
            idx += static_cast<long long>(packed % d) * stride[static_cast<std::size_t>(subs[static_cast<std::size_t>(s)])];
            packed /= d;
        }
        return idx;
    };

    std::vector<int> keep_v(keep.begin(), keep.end());
    CMat out(dkeep);
    for (int i = 0; i < dkeep; ++i) {
        const long long bi = expand(i, keep_v);
        for (int j = 0; j < dkeep; ++j) {
            const long long bj = expand(j, keep_v);
            cplx acc = 0.0;
            for (int t = 0; t < dtr; ++t) {
                const long long bt = expand(t, traced);
                acc += rho(static_cast<int>(bi + bt), static_cast<int>(bj + bt));
            }
            out(i, j) = acc;
        }
    }
    return out;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_hermitian(const CMat& a, double tol) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

EigenSystem eig_hermitian(const CMat& a, bool want_vectors) {
    const int n = a.dim();
    CMat w = a;
    CMat v = CMat::identity(n);

    // A <- U+ A U with a two-sided complex Jacobi rotation on (p,q).
    auto rotate = [&](int p, int q) {
        const cplx apq = w(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) {
            w(p, q) = w(q, p) = 0.0;
            return;
        }
        const cplx phase = apq / r; // e^{i phi}
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U columns: U[.,p] = (c, s*conj(phase)), U[.,q] = (-s, c*conj(phase)) on rows (p,q)
        const cplx upq = -s;
        const cplx uqp = s * std::conj(phase);
        const cplx uqq = c * std::conj(phase);
        for (int i = 0; i < n; ++i) {
            const cplx wip = w(i, p), wiq = w(i, q);
            w(i, p) = wip * c + wiq * uqp;
            w(i, q) = wip * upq + wiq * uqq;
        }
        for (int j = 0; j < n; ++j) {
            const cplx wpj = w(p, j), wqj = w(q, j);
            w(p, j) = c * wpj + std::conj(uqp) * wqj;
            w(q, j) = std::conj(upq) * wpj + std::conj(uqq) * wqj;
        }
        if (want_vectors) {
            for (int i = 0; i < n; ++i) {
                const cplx vip = v(i, p), viq = v(i, q);
                v(i, p) = vip * c + viq * uqp;
                v(i, q) = vip * upq + viq * uqq;
            }
        }
        w(p, q) = w(q, p) = 0.0;
    };

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(w(p, q));
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(w(p, q)) > 1e-300) rotate(p, q);
    }

    EigenSystem es;
    es.values.resize(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return w(x, x).real() < w(y, y).real(); });
    for (int i = 0; i < n; ++i) es.values[static_cast<std::size_t>(i)] = w(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
    if (want_vectors) {
        es.vectors = CMat(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
    }
    return es;
}

std::vector<double> eigvals_hermitian(const CMat& a) { return eig_hermitian(a).values; }

CMat sqrt_psd(const CMat& a) {
    const auto es = eig_hermitian(a, true);
    const int n = a.dim();
    CMat out(n);
    for (int k = 0; k < n; ++k) {
        const double lam = std::max(0.0, es.values[static_cast<std::size_t>(k)]);
        const double rl = std::sqrt(lam);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += rl * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return out;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entanglement_entropy(const CVec& psi) {
    if (psi.dim() != 4) throw DimensionError("entanglement_entropy: expected a two-qubit state");
    if (std::abs(psi.norm2() - 1.0) > 1e-9)
        throw NormalizationError("entanglement_entropy: state not normalized");
    // reduced state of the first qubit
    CMat red(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < 2; ++k) acc += psi[i * 2 + k] * std::conj(psi[j * 2 + k]);
            red(i, j) = acc;
        }
    const auto vals = eigvals_hermitian(red);
    double s = 0.0;
    for (double lam : vals) {
        if (lam > 1e-15) s -= lam * std::log2(lam);
    }
    return s;
}

namespace {

void check_density(const CMat& rho) {
    if (rho.dim() != 4) throw DimensionError("expected a two-qubit density matrix");
    if (!is_hermitian(rho, 1e-10)) throw StateError("density matrix not Hermitian");
    if (std::abs(trace(rho).real() - 1.0) > 1e-9 || std::abs(trace(rho).imag()) > 1e-9)
        throw StateError("density matrix trace differs from 1");
    const auto vals = eigvals_hermitian(rho);
    for (double lam : vals)
        if (lam < -1e-10) throw StateError("density matrix not positive semidefinite");
}

} // namespace

double concurrence(const CMat& rho) {
    check_density(rho);
    // flip = (sy (x) sy); rho_tilde = flip rho* flip
    CMat flip(4);
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    CMat conj_rho(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) conj_rho(i, j) = std::conj(rho(i, j));
    const CMat tilde = matmul(matmul(flip, conj_rho), flip);
    // eigenvalues of rho*tilde via the Hermitian similarity sqrt(rho) tilde sqrt(rho)
    const CMat root = sqrt_psd(rho);
    const CMat herm = matmul(matmul(root, tilde), root);
    auto vals = eigvals_hermitian(herm);
    std::vector<double> lam;
    lam.reserve(4);
    for (double x : vals) lam.push_back(std::sqrt(std::max(0.0, x)));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double eof(const CMat& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

} // namespace binet

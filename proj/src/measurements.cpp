// SPDX-License-Identifier: Apache-2.0

#include "binet/measurements.hpp"

#include <cmath>

namespace binet {

namespace {

CVec bell_vector(int which) {
    // 0: phi+, 1: phi-, 2: psi+, 3: psi-
    const double r = 1.0 / std::sqrt(2.0);
    CVec v(4);
    switch (which) {
    case 0: v[0] = r; v[3] = r; break;
    case 1: v[0] = r; v[3] = -r; break;
    case 2: v[1] = r; v[2] = r; break;
    default: v[1] = r; v[2] = -r; break;
    }
    return v;
}

// Bloch-vector ket in cylindrical form; sign = +1 for |+m>, -1 for |-m>.
CVec bloch_ket(double r, double phi, int sign) {
    CVec v(2);
    const double s = static_cast<double>(sign);
    v[0] = std::sqrt((1.0 + s * r) / 2.0) * std::exp(cplx(0.0, -phi / 2.0));
    v[1] = s * std::sqrt((1.0 - s * r) / 2.0) * std::exp(cplx(0.0, phi / 2.0));
    return v;
}

} // namespace

JointBasis bell_basis() {
    JointBasis b;
    b.kind = JointKind::BSM;
    for (int i = 0; i < 4; ++i) b.elements[static_cast<std::size_t>(i)] = bell_vector(i);
    b.bell_bits = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    return b;
}

TetraVertex tetra_vertex(int b) {
    if (b < 1 || b > 4) throw ParamError("tetra_vertex: index must be in 1..4");
    static constexpr std::array<std::array<double, 3>, 4> raw = {{
        {1.0, 1.0, 1.0},
        {1.0, -1.0, -1.0},
        {-1.0, 1.0, -1.0},
        {-1.0, -1.0, 1.0},
    }};
    const double inv = 1.0 / std::sqrt(3.0);
    TetraVertex v;
    for (int k = 0; k < 3; ++k) v.bloch[static_cast<std::size_t>(k)] = raw[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(k)] * inv;
    v.r = v.bloch[2];
    v.phi = std::atan2(v.bloch[1], v.bloch[0]);
    return v;
}

JointBasis ejm_basis(double theta) {
    if (theta < 0.0 || theta > kPi / 2.0 + 1e-12)
        throw ParamError("ejm_basis: theta must lie in [0, pi/2]");
    JointBasis b;
    b.kind = JointKind::EJM;
    b.theta = theta;
    const cplx cp = (std::sqrt(3.0) + std::exp(cplx(0.0, theta))) / (2.0 * std::sqrt(2.0));
    const cplx cm = (std::sqrt(3.0) - std::exp(cplx(0.0, theta))) / (2.0 * std::sqrt(2.0));
    for (int i = 1; i <= 4; ++i) {
        const TetraVertex t = tetra_vertex(i);
        const CVec plus = bloch_ket(t.r, t.phi, +1);
        const CVec minus = bloch_ket(t.r, t.phi, -1);
        const CVec pm = kron(plus, minus);
        const CVec mp = kron(minus, plus);
        CVec e(4);
        for (int k = 0; k < 4; ++k) e[k] = cp * pm[k] + cm * mp[k];
        b.elements[static_cast<std::size_t>(i - 1)] = e;
        for (int k = 0; k < 3; ++k)
            b.sign_triple[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)] =
                t.bloch[static_cast<std::size_t>(k)] > 0 ? 1 : -1;
    }
    return b;
}

CMat pauli(int axis) {
    CMat m(2);
    switch (axis) {
    case 0: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 1: m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
    case 2: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw ParamError("pauli: axis must be 0, 1 or 2");
    }
    return m;
}

CMat observable(double angle, int setting, Party party) {
    if (setting != 0 && setting != 1) throw ParamError("observable: setting must be 0 or 1");
    const double sgn = (party == Party::Alice ? -1.0 : 1.0) * (setting ? -1.0 : 1.0);
    // Alice: cos a sz - (-1)^x sin a sx ; Charu: cos a sz + (-1)^z sin a sx
    const CMat sz = pauli(2);
    const CMat sx = pauli(0);
    return add_scaled(std::cos(angle), sz, sgn * std::sin(angle), sx);
}

std::pair<CMat, CMat> povm_effects(const CMat& direction, double G) {
    if (G <= 0.0 || G > 1.0) throw ParamError("povm_effects: G must lie in (0,1]");
    const CMat id = CMat::identity(direction.dim());
    // E^a = G P^a + (1-G)/2 I with P^a = (I +- direction)/2
    CMat e0 = add_scaled(0.5, id, G * 0.5, direction);
    CMat e1 = add_scaled(0.5, id, -G * 0.5, direction);
    return {e0, e1};
}

RoundSpec::RoundSpec(double angle_, double G_) : angle(angle_), G(G_) {
    if (G <= 0.0 || G > 1.0) throw ParamError("RoundSpec: G must lie in (0,1]");
    F = std::sqrt(1.0 - G * G);
}

CMat embed_qubit(const CMat& op, int qubit) {
    if (op.dim() != 2) throw DimensionError("embed_qubit: operator must be 2x2");
    if (qubit != 0 && qubit != 1) throw DimensionError("embed_qubit: qubit must be 0 or 1");
    const CMat id = CMat::identity(2);
    return qubit == 0 ? kron(op, id) : kron(id, op);
}

CMat weak_map_unconditional(const CMat& rho, int qubit, const CMat& direction, double F) {
    if (rho.dim() != 4) throw DimensionError("weak_map_unconditional: state must be 4x4");
    if (F < 0.0 || F > 1.0) throw ParamError("weak_map_unconditional: F must lie in [0,1]");
    // P0 rho P0 + P1 rho P1 = (rho + D rho D) / 2 for a +-1 observable D
    const CMat d = embed_qubit(direction, qubit);
    const CMat drd = matmul(matmul(d, rho), d);
    const CMat dephased = add_scaled(0.5, rho, 0.5, drd);
    return add_scaled(F, rho, 1.0 - F, dephased);
}

CMat weak_map_conditional(const CMat& rho, int qubit, const CMat& direction, double G,
                          int outcome) {
    if (rho.dim() != 4) throw DimensionError("weak_map_conditional: state must be 4x4");
    if (G <= 0.0 || G > 1.0) throw ParamError("weak_map_conditional: G must lie in (0,1]");
    if (outcome != 0 && outcome != 1) throw ParamError("weak_map_conditional: outcome must be 0 or 1");
    const double F = std::sqrt(1.0 - G * G);
    const double sign = outcome == 0 ? 1.0 : -1.0;
    const double c0 = (1.0 + sign * G - F) / 2.0;
    const double c1 = (1.0 - sign * G - F) / 2.0;
    const CMat d = embed_qubit(direction, qubit);
    const CMat id = CMat::identity(4);
    const CMat p0 = add_scaled(0.5, id, 0.5, d);
    const CMat p1 = add_scaled(0.5, id, -0.5, d);
    const CMat t0 = matmul(matmul(p0, rho), p0);
    const CMat t1 = matmul(matmul(p1, rho), p1);
    CMat out = add_scaled(F / 2.0, rho, c0, t0);
    return add_scaled(1.0, out, c1, t1);
}

} // namespace binet

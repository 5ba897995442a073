// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/qmath.hpp"

#include <array>
#include <utility>

namespace binet {

enum class JointKind { BSM, EJM };
enum class Party { Alice, Charu };

// Four orthonormal two-qubit vectors with outcome labels. For the Bell basis
// the label is a bit pair (b0, b1); for the elegant joint measurement it is
// the sign triple of the associated tetrahedron vertex.
struct JointBasis {
    JointKind kind = JointKind::BSM;
    double theta = 0.0; // EJM parameter; unused for BSM
    std::array<CVec, 4> elements;
    std::array<std::array<int, 2>, 4> bell_bits{};   // BSM outcome bits b0,b1
    std::array<std::array<int, 3>, 4> sign_triple{}; // EJM outcome signs

    // Sign the outcome contributes to the y-th correlator: (-1)^{b^y} for the
    // Bell basis (y in {0,1}), the y-th triple component for the EJM (y in
    // {0,1,2}).
    int sign(int y, int outcome) const {
        if (kind == JointKind::BSM) return bell_bits[static_cast<std::size_t>(outcome)][static_cast<std::size_t>(y)] ? -1 : 1;
        return sign_triple[static_cast<std::size_t>(outcome)][static_cast<std::size_t>(y)];
    }
};

// Bell basis with label map phi+ -> 00, phi- -> 01, psi+ -> 10, psi- -> 11;
// b0 is the parity (sz sz) bit, b1 the phase (sx sx) bit. The map is pinned
// empirically by the label-search utility in the protocol module.
JointBasis bell_basis();

// Regular-tetrahedron vertex b in {1..4}: unit Bloch vector plus its
// cylindrical parameters (r = z component, phi = azimuth).
struct TetraVertex {
    std::array<double, 3> bloch;
    double r;
    double phi;
};
TetraVertex tetra_vertex(int b);

// Elegant joint measurement basis, theta in [0, pi/2]. All four elements are
// equally entangled; theta = pi/2 reaches Bell-level entanglement.
JointBasis ejm_basis(double theta);

// Pauli matrix along axis 0->x, 1->y, 2->z.
CMat pauli(int axis);

// Binary-setting observables in the x-z plane:
//   Alice: cos(angle) sz - (-1)^setting sin(angle) sx
//   Charu: cos(angle) sz + (-1)^setting sin(angle) sx
CMat observable(double angle, int setting, Party party);

// Two-outcome unsharp POVM for a +-1 observable: E^a = G P^a + (1-G)/2 I.
std::pair<CMat, CMat> povm_effects(const CMat& direction, double G);

// One observer round: measurement angle (x-z plane) and precision G; the
// quality factor F = sqrt(1 - G^2) is derived on construction.
struct RoundSpec {
    double angle;
    double G;
    double F;
    RoundSpec(double angle_, double G_);
};

// Outcome-averaged Lueders update on one qubit of a two-qubit state:
//   W(rho) = F rho + (1-F) (P0 rho P0 + P1 rho P1).
// Trace preserving; equals sum_a sqrt(E^a) rho sqrt(E^a) with F = sqrt(1-G^2).
CMat weak_map_unconditional(const CMat& rho, int qubit, const CMat& direction, double F);

// Outcome-conditioned update; the result is unnormalized with trace equal to
// the outcome probability. Summed over outcomes it reproduces the map above.
CMat weak_map_conditional(const CMat& rho, int qubit, const CMat& direction, double G,
                          int outcome);

// op acting on the given qubit of a two-qubit space (kron with identities).
CMat embed_qubit(const CMat& op, int qubit);

} // namespace binet

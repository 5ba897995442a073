// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/common.hpp"

#include <span>
#include <vector>

namespace binet::analytic {

// Inputs for the closed forms. Lists follow chain order; F entries must equal
// sqrt(1 - G^2) of the matching G.
struct ClosedFormInputs {
    int m = 1, n = 1;
    std::vector<double> G, F;   // Alice chain, length m
    std::vector<double> Gp, Fp; // Charu chain, length n
    std::vector<double> phi;    // Alice angles, length m
    std::vector<double> theta;  // Charu angles, length n
    double v1 = 1.0, v2 = 1.0;
    double alpha = 0.5, beta = 0.5;
};

struct IJB {
    double I = 0.0, J = 0.0, B = 0.0;
};

// sqrt(v1 v2) * (1 + 2 (alpha(1-alpha) beta(1-beta))^{1/4}); equals 2 for two
// maximally entangled pure sources.
double resource_factor(double v1, double v2, double alpha, double beta);

// General BRGP closed form for noisy non-maximally entangled sources and
// arbitrary x-z-plane angles. Each intermediate round multiplies the parity
// (sz sz) correlator by ((1+F) + (1-F) cos 2a)/2 and the phase (sx sx)
// correlator by ((1+F) - (1-F) cos 2a)/2; the final rounds contribute their
// precisions and direction cosines. This is the oracle counterpart of the
// brute-force engine for the Bell-basis scenario.
IJB brgp_general(const ClosedFormInputs& in);

// Unidirectional (m = 1) maximally entangled case; the per-round structure
// matches the explicit three-round recursion expressions, normalized by the
// history-averaging weight 2^-(n-1) so that sharp pi/4 inputs give B = sqrt 2.
IJB brgp_uni_general(const ClosedFormInputs& in);

// B at optimal angles (theta = phi = pi/4) for maximally entangled sources:
//   B = 2 sqrt( 2^-(n+m-1) prod(1+F_i) prod(1+F'_i) G_m G'_n ).
double brgp_optimal_form(int m, int n, std::span<const double> F, std::span<const double> Fp,
                         double Gm, double Gpn);

// Same with the noisy-NME resource factor applied.
double brgp_noisy_nme(int m, int n, std::span<const double> F, std::span<const double> Fp,
                      double Gm, double Gpn, double v1, double v2, double alpha, double beta);

// TGB functional for singlet-based Werner sources with Pauli settings and an
// EJM(theta) joint measurement. Intermediate rounds contribute the isotropic
// shrink K = (1 + 2F)/3 per round; the final rounds their precisions.
double tgb_general(double v1, double v2, double ejm_theta, double Gm,
                   std::span<const double> F_alice, double Gpn, std::span<const double> Fp);

// Unidirectional special case (single sharp Alice), the published form:
//   BE = (cos t / 2)[v1 + v2 G'_n prod K'_i] + 3 v1 v2 G'_n prod K'_i.
double tgb_closed_form(double v1, double v2, double ejm_theta, double Gpn,
                       std::span<const double> Fp);

// Boundary precision at which BE = 3 given the Z = 0 strategy:
//   G' = (6 - v cos t) / (6 v^2 + v cos t) / Kprod.
// Returns +infinity when no finite precision can reach the boundary.
double tgb_critical_G(double v, double ejm_theta, double Kprod);
double tgb_critical_G(double v1, double v2, double ejm_theta, double Kprod);

} // namespace binet::analytic

// SPDX-License-Identifier: Apache-2.0

#include "binet/analytic.hpp"

#include <cmath>
#include <limits>

namespace binet::analytic {

namespace {

void check_lists(const ClosedFormInputs& in) {
    const auto m = static_cast<std::size_t>(in.m);
    const auto n = static_cast<std::size_t>(in.n);
    if (in.m < 1 || in.n < 1) throw ParamError("closed form: m and n must be >= 1");
    if (in.G.size() != m || in.F.size() != m || in.phi.size() != m)
        throw ParamError("closed form: Alice lists must have length m");
    if (in.Gp.size() != n || in.Fp.size() != n || in.theta.size() != n)
        throw ParamError("closed form: Charu lists must have length n");
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(in.F[i] * in.F[i] + in.G[i] * in.G[i] - 1.0) > 1e-12)
            throw ParamError("closed form: F^2 + G^2 must equal 1 (Alice)");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(in.Fp[i] * in.Fp[i] + in.Gp[i] * in.Gp[i] - 1.0) > 1e-12)
            throw ParamError("closed form: F^2 + G^2 must equal 1 (Charu)");
    if (in.v1 < 0.0 || in.v1 > 1.0 || in.v2 < 0.0 || in.v2 > 1.0)
        throw ParamError("closed form: visibilities must lie in [0,1]");
    if (in.alpha < 0.0 || in.alpha > 1.0 || in.beta < 0.0 || in.beta > 1.0)
        throw ParamError("closed form: alpha, beta must lie in [0,1]");
}

// Averaged per-round transfer factors for one chain: parity channel
// ((1+F) + (1-F) cos 2a)/2, phase channel ((1+F) - (1-F) cos 2a)/2.
void chain_factors(std::span<const double> F, std::span<const double> angles,
                   std::size_t rounds, double& parity, double& phase) {
    parity = 1.0;
    phase = 1.0;
    for (std::size_t i = 0; i + 1 < rounds; ++i) {
        const double c2 = std::cos(2.0 * angles[i]);
        parity *= 0.5 * ((1.0 + F[i]) + (1.0 - F[i]) * c2);
        phase *= 0.5 * ((1.0 + F[i]) - (1.0 - F[i]) * c2);
    }
}

} // namespace

double resource_factor(double v1, double v2, double alpha, double beta) {
    return std::sqrt(v1 * v2) *
           (1.0 + 2.0 * std::pow(alpha * (1.0 - alpha) * beta * (1.0 - beta), 0.25));
}

IJB brgp_general(const ClosedFormInputs& in) {
    check_lists(in);
    double par_a, pha_a, par_c, pha_c;
    chain_factors(in.F, in.phi, static_cast<std::size_t>(in.m), par_a, pha_a);
    chain_factors(in.Fp, in.theta, static_cast<std::size_t>(in.n), par_c, pha_c);

    const double Gm = in.G.back();
    const double Gpn = in.Gp.back();
    const double phi_m = in.phi.back();
    const double theta_n = in.theta.back();
    const double vv = in.v1 * in.v2;
    const double phase_strength =
        4.0 * std::sqrt(in.alpha * (1.0 - in.alpha) * in.beta * (1.0 - in.beta));

    IJB out;
    out.I = vv * Gm * Gpn * std::cos(phi_m) * std::cos(theta_n) * par_a * par_c;
    out.J = -vv * Gm * Gpn * std::sin(phi_m) * std::sin(theta_n) * pha_a * pha_c *
            phase_strength;
    out.B = std::sqrt(std::abs(out.I)) + std::sqrt(std::abs(out.J));
    return out;
}

IJB brgp_uni_general(const ClosedFormInputs& in) {
    if (in.m != 1) throw ParamError("brgp_uni_general: requires m = 1");
    if (in.v1 != 1.0 || in.v2 != 1.0 || in.alpha != 0.5 || in.beta != 0.5)
        throw ParamError("brgp_uni_general: requires maximally entangled pure sources");
    return brgp_general(in);
}

double brgp_optimal_form(int m, int n, std::span<const double> F, std::span<const double> Fp,
                         double Gm, double Gpn) {
    if (m < 1 || n < 1) throw ParamError("brgp_optimal_form: m, n must be >= 1");
    if (static_cast<int>(F.size()) < m - 1 || static_cast<int>(Fp.size()) < n - 1)
        throw ParamError("brgp_optimal_form: quality-factor lists too short");
    double prod = 1.0;
    for (int i = 0; i + 1 < m; ++i) prod *= 1.0 + F[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < n; ++i) prod *= 1.0 + Fp[static_cast<std::size_t>(i)];
    return 2.0 * std::sqrt(std::ldexp(prod * Gm * Gpn, -(n + m - 1)));
}

double brgp_noisy_nme(int m, int n, std::span<const double> F, std::span<const double> Fp,
                      double Gm, double Gpn, double v1, double v2, double alpha,
                      double beta) {
    if (v1 < 0.0 || v1 > 1.0 || v2 < 0.0 || v2 > 1.0)
        throw ParamError("brgp_noisy_nme: visibilities must lie in [0,1]");
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0)
        throw ParamError("brgp_noisy_nme: alpha, beta must lie in [0,1]");
    return 0.5 * brgp_optimal_form(m, n, F, Fp, Gm, Gpn) *
           resource_factor(v1, v2, alpha, beta);
}

double tgb_general(double v1, double v2, double ejm_theta, double Gm,
                   std::span<const double> F_alice, double Gpn,
                   std::span<const double> Fp) {
    double ka = 1.0, kc = 1.0;
    for (double f : F_alice) ka *= (1.0 + 2.0 * f) / 3.0;
    for (double f : Fp) kc *= (1.0 + 2.0 * f) / 3.0;
    const double ct = std::cos(ejm_theta);
    return 0.5 * ct * (v1 * Gm * ka + v2 * Gpn * kc) + 3.0 * v1 * v2 * Gm * ka * Gpn * kc;
}

double tgb_closed_form(double v1, double v2, double ejm_theta, double Gpn,
                       std::span<const double> Fp) {
    return tgb_general(v1, v2, ejm_theta, 1.0, {}, Gpn, Fp);
}

double tgb_critical_G(double v1, double v2, double ejm_theta, double Kprod) {
    if (v1 <= 0.0 || v2 <= 0.0 || Kprod <= 0.0)
        return std::numeric_limits<double>::infinity();
    const double ct = std::cos(ejm_theta);
    const double denom = v2 * ct + 6.0 * v1 * v2;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return (6.0 - v1 * ct) / denom / Kprod;
}

double tgb_critical_G(double v, double ejm_theta, double Kprod) {
    return tgb_critical_G(v, v, ejm_theta, Kprod);
}

} // namespace binet::analytic

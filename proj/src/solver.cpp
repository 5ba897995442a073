// SPDX-License-Identifier: Apache-2.0

#include "binet/solver.hpp"
#include "binet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace binet::solver {

namespace {

constexpr double kRootTol = 1e-9;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Critical recursion G_{k+1} = 2 G_k / (1 + sqrt(1 - G_k^2)) and its inverse.
double forward_step(double g) { return 2.0 * g / (1.0 + std::sqrt(std::max(0.0, 1.0 - g * g))); }
double backward_step(double g) { return 4.0 * g / (4.0 + g * g); }

bool is_brgp_family(const ResourceSpec& r) {
    // The BRGP closed forms are derived for the |00>/|11> pure-state family;
    // at eta = 1/2 the singlet-based family is locally equivalent.
    auto ok = [](const SourceSpec& s) {
        return s.base == BellBase::PhiPlus || std::abs(s.eta - 0.5) < 1e-12;
    };
    return ok(r.s1) && ok(r.s2);
}

SharingResult schedule_from_recursion(double g1, int cap) {
    SharingResult out;
    double g = g1;
    for (int k = 0; k < cap; ++k) {
        if (g > 1.0 + 1e-12) {
            out.next_root = g;
            break;
        }
        out.schedule.push_back(std::min(g, 1.0));
        g = forward_step(std::min(g, 1.0));
    }
    out.max_rounds = static_cast<int>(out.schedule.size());
    return out;
}

ScenarioConfig ejm_config(const ResourceSpec& res, const std::vector<double>& charu_G) {
    ScenarioConfig c;
    c.source1 = res.s1;
    c.source2 = res.s2;
    c.joint = JointKind::EJM;
    c.ejm_theta = res.ejm_theta;
    c.alice_rounds = {RoundSpec(kPi / 4.0, 1.0)};
    for (double g : charu_G) c.charu_rounds.emplace_back(kPi / 4.0, g);
    return c;
}

// Violation margin of the engine at the given Charu precisions (last entry is
// the probed round).
double ejm_margin(const ResourceSpec& res, const std::vector<double>& charu_G) {
    const BilocalReport rep = tgb_from_table(averaged_table(ejm_config(res, charu_G)));
    return rep.BE - (3.0 + 5.0 * rep.Z);
}

// Engine-driven critical precision for the next EJM round on top of the given
// critical history. Returns +inf when no precision in (0,1] reaches the bound.
double ejm_engine_critical(const ResourceSpec& res, const std::vector<double>& earlier) {
    auto margin = [&](double g) {
        std::vector<double> gs = earlier;
        gs.push_back(g);
        return ejm_margin(res, gs);
    };
    if (margin(1.0) <= 0.0) return std::numeric_limits<double>::infinity();
    double hi = 1.0, lo = 1.0;
    const int scan = 64;
    for (int i = 1; i <= scan; ++i) {
        lo = 1.0 - static_cast<double>(i) / scan + 1e-12;
        if (margin(lo) <= 0.0) break;
        hi = lo;
    }
    if (margin(lo) > 0.0) return lo; // violates all the way down; treat as ~0
    while (hi - lo > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        (margin(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

SharingResult ejm_schedule(const ResourceSpec& res, int cap) {
    const bool singlet_werner = res.s1.base == BellBase::PsiMinus &&
                                res.s2.base == BellBase::PsiMinus &&
                                std::abs(res.s1.eta - 0.5) < 1e-12 &&
                                std::abs(res.s2.eta - 0.5) < 1e-12;
    SharingResult out;
    if (singlet_werner) {
        const double base = analytic::tgb_critical_G(res.s1.visibility, res.s2.visibility,
                                                     res.ejm_theta, 1.0);
        double kprod = 1.0;
        for (int k = 0; k < cap; ++k) {
            const double g = base / kprod;
            if (g > 1.0 + 1e-12) {
                out.next_root = g;
                break;
            }
            out.schedule.push_back(g);
            const double f = std::sqrt(std::max(0.0, 1.0 - g * g));
            kprod *= (1.0 + 2.0 * f) / 3.0;
        }
    } else {
        // No closed form for this family; locate each critical with the engine.
        for (int k = 0; k < cap; ++k) {
            const double g = ejm_engine_critical(res, out.schedule);
            if (!(g <= 1.0)) break; // next_root not representable beyond G = 1
            out.schedule.push_back(g);
        }
    }
    out.max_rounds = static_cast<int>(out.schedule.size());
    if (out.schedule.empty())
        throw NoViolation("EJM scenario: no violation even for a sharp first round");
    return out;
}

} // namespace

double resource_factor_of(const ResourceSpec& r) {
    return analytic::resource_factor(r.s1.visibility, r.s2.visibility, r.s1.eta, r.s2.eta);
}

SharingResult critical_schedule(Scenario scenario, const ResourceSpec& resource, int cap) {
    switch (scenario) {
    case Scenario::UniBRGP: {
        if (!is_brgp_family(resource))
            throw WrongScenario("UniBRGP schedule expects the |00>/|11> source family");
        const double r = resource_factor_of(resource);
        const double g1 = 2.0 / (r * r);
        if (g1 > 1.0 + 1e-12)
            throw NoViolation("resource too weak: first critical precision exceeds 1");
        return schedule_from_recursion(g1, cap);
    }
    case Scenario::BiEqualBRGP: {
        if (!is_brgp_family(resource))
            throw WrongScenario("BiEqualBRGP schedule expects the |00>/|11> source family");
        const double r = resource_factor_of(resource);
        const double g1 = std::sqrt(2.0) / r;
        if (g1 > 1.0 + 1e-12)
            throw NoViolation("resource too weak: first critical precision exceeds 1");
        return schedule_from_recursion(g1, cap);
    }
    case Scenario::UniEJM:
        return ejm_schedule(resource, cap);
    }
    throw ConfigError("unknown scenario");
}

int max_rounds(Scenario scenario, const ResourceSpec& resource) {
    try {
        return critical_schedule(scenario, resource).max_rounds;
    } catch (const NoViolation&) {
        return 0;
    }
}

namespace {

ResourceSpec family_resource(Family family, Scenario scenario, double param,
                             double ejm_theta) {
    ResourceSpec res;
    res.ejm_theta = ejm_theta;
    const BellBase base =
        scenario == Scenario::UniEJM ? BellBase::PsiMinus : BellBase::PhiPlus;
    if (family == Family::NME) {
        res.s1 = SourceSpec{param, 1.0, base};
        res.s2 = SourceSpec{param, 1.0, base};
    } else {
        res.s1 = SourceSpec{0.5, param, base};
        res.s2 = SourceSpec{0.5, param, base};
    }
    return res;
}

} // namespace

double entanglement_threshold(int target_rounds, Family family, Scenario scenario,
                              double ejm_theta) {
    if (target_rounds < 1) throw ParamError("entanglement_threshold: target_rounds >= 1");
    // Parameter interval [lo, hi] with the predicate monotone and true at hi.
    double lo, hi;
    if (family == Family::NME) {
        lo = scenario == Scenario::UniEJM ? 1.0 - 1e-9 : 1e-9;
        hi = 0.5;
    } else {
        lo = 1e-9;
        hi = 1.0;
    }
    auto feasible = [&](double param) {
        return max_rounds(scenario, family_resource(family, scenario, param, ejm_theta)) >=
               target_rounds;
    };
    if (!feasible(hi)) throw Unreachable("no parameter in the family attains the target rounds");
    while (std::abs(hi - lo) > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    const double edge = hi;
    const ResourceSpec at = family_resource(family, scenario, edge, ejm_theta);
    if (family == Family::NME) return entanglement_entropy(nme_pure(edge, at.s1.base));
    return eof(source_state(at.s1));
}

double chain_strength(int m) {
    if (m < 1) throw ParamError("chain_strength: m >= 1");
    double g = 1.0;
    for (int i = 1; i < m; ++i) g = backward_step(g);
    return g;
}

double chain_strength_search(int m, double grid_step, int restarts, std::uint64_t seed) {
    if (m < 1) throw ParamError("chain_strength_search: m >= 1");
    // Strength of a concrete G-assignment: min_i 2^-(i-1) prod_{k<i}(1+F_k) G_i.
    auto min_strength = [&](const std::vector<double>& gs) {
        double prod = 1.0, best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            const double s = prod * gs[static_cast<std::size_t>(i)];
            best = std::min(best, s);
            prod *= 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - gs[static_cast<std::size_t>(i)] * gs[static_cast<std::size_t>(i)])));
        }
        return best;
    };

    double best = 0.0;
    // Balanced-chain scan over the first-round precision.
    for (double g1 = grid_step; g1 <= 1.0 + 1e-12; g1 += grid_step) {
        std::vector<double> gs{std::min(g1, 1.0)};
        bool ok = true;
        for (int i = 1; i < m; ++i) {
            const double next = forward_step(gs.back());
            if (next > 1.0) {
                ok = false;
                break;
            }
            gs.push_back(next);
        }
        if (ok) best = std::max(best, min_strength(gs));
    }
    // Seeded multistart coordinate ascent over unconstrained assignments.
    std::mt19937_64 rng(seed);
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> gs(static_cast<std::size_t>(m));
        for (auto& g : gs) g = 0.3 + 0.7 * uniform01(rng);
        double cur = min_strength(gs);
        double step = 0.1;
        while (step > 1e-6) {
            bool improved = false;
            for (int i = 0; i < m; ++i) {
                for (double delta : {step, -step}) {
                    const double old = gs[static_cast<std::size_t>(i)];
                    const double cand = std::clamp(old + delta, 1e-6, 1.0);
                    gs[static_cast<std::size_t>(i)] = cand;
                    const double val = min_strength(gs);
                    if (val > cur) {
                        cur = val;
                        improved = true;
                    } else {
                        gs[static_cast<std::size_t>(i)] = old;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, cur);
    }
    return best;
}

bool pair_feasible(int m, int n, double resource_factor) {
    if (m < 1 || n < 1) return false;
    // Pairwise functionals factorize over the chains:
    //   B(i,j)^2 = S_i S'_j R^2 / 2,
    // so a strictly violating schedule exists iff the maximal balanced chain
    // strengths satisfy A*(m) A*(n) > 2 / R^2.
    return chain_strength(m) * chain_strength(n) > 2.0 / (resource_factor * resource_factor);
}

FrontierResult bidirectional_frontier(const ResourceSpec& resource,
                                      bool allow_unequal_precision, int cap) {
    if (!is_brgp_family(resource))
        throw WrongScenario("frontier analysis expects the |00>/|11> source family");
    const double r = resource_factor_of(resource);
    FrontierResult out;
    if (allow_unequal_precision) {
        for (int m = 1; m <= cap; ++m) {
            int best_n = 0;
            for (int n = 1; n <= cap; ++n)
                if (pair_feasible(m, n, r)) best_n = n;
            if (best_n >= 1) out.per_m.emplace_back(m, best_n);
        }
    } else {
        // Equal precision forces G'_k = G_k, so only diagonal pairs arise.
        const double need = std::sqrt(2.0) / r;
        for (int k = 1; k <= cap; ++k)
            if (chain_strength(k) > need) out.per_m.emplace_back(k, k);
    }
    for (const auto& [m, n] : out.per_m) {
        bool dominated = false;
        for (const auto& [m2, n2] : out.per_m)
            if ((m2 >= m && n2 > n) || (m2 > m && n2 >= n)) dominated = true;
        if (!dominated) out.pareto.emplace_back(m, n);
    }
    return out;
}

namespace {

// Golden-section maximization of a 1-D function on [lo, hi].
template <typename F>
double golden_max(F f, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

AngleCertificate optimal_angle_search(Scenario scenario, int round_count,
                                      const ResourceSpec& resource, double grid_step) {
    if (scenario != Scenario::UniBRGP)
        throw WrongScenario("angle search is defined for the unidirectional BRGP scenario");
    if (round_count < 1 || round_count > 3)
        throw ParamError("optimal_angle_search: round_count must be 1..3");

    const SharingResult sched = critical_schedule(Scenario::UniBRGP, resource);
    if (sched.max_rounds < round_count)
        throw NoViolation("resource does not support the requested round count");

    // Round-by-round optimization, mirroring the sequential protocol: the
    // first round fixes (theta_1, phi) jointly; each later round k frees only
    // theta_k on top of the already-chosen angles. (A joint search over all
    // angles at once sits on a degenerate ridge: re-balancing the final
    // angles compensates any intermediate-angle change without altering B.)
    analytic::ClosedFormInputs in;
    in.m = 1;
    in.G = {1.0};
    in.F = {0.0};
    in.phi = {kPi / 4.0};
    in.v1 = resource.s1.visibility;
    in.v2 = resource.s2.visibility;
    in.alpha = resource.s1.eta;
    in.beta = resource.s2.eta;

    AngleCertificate cert;
    const double half_pi = kPi / 2.0;

    for (int k = 1; k <= round_count; ++k) {
        const double g = sched.schedule[static_cast<std::size_t>(k - 1)];
        in.n = k;
        in.Gp.push_back(g);
        in.Fp.push_back(std::sqrt(std::max(0.0, 1.0 - g * g)));
        in.theta.push_back(kPi / 4.0);

        auto value = [&](double theta_k, double phi) {
            in.theta.back() = theta_k;
            in.phi[0] = phi;
            return analytic::brgp_general(in).B;
        };

        if (k == 1) {
            double best = -1.0, best_t = 0.0, best_p = 0.0;
            for (double t = 0.0; t <= half_pi + 1e-12; t += grid_step)
                for (double p = 0.0; p <= half_pi + 1e-12; p += grid_step) {
                    const double v = value(std::min(t, half_pi), std::min(p, half_pi));
                    if (v > best) {
                        best = v;
                        best_t = std::min(t, half_pi);
                        best_p = std::min(p, half_pi);
                    }
                }
            for (int pass = 0; pass < 3; ++pass) {
                best_t = golden_max([&](double t) { return value(t, best_p); },
                                    std::max(0.0, best_t - 2.0 * grid_step),
                                    std::min(half_pi, best_t + 2.0 * grid_step));
                best_p = golden_max([&](double p) { return value(best_t, p); },
                                    std::max(0.0, best_p - 2.0 * grid_step),
                                    std::min(half_pi, best_p + 2.0 * grid_step));
            }
            cert.charu_angles.push_back(best_t);
            cert.alice_angle = best_p;
            in.theta.back() = best_t;
            in.phi[0] = best_p;
        } else {
            const double phi = cert.alice_angle;
            double best = -1.0, best_t = 0.0;
            for (double t = 0.0; t <= half_pi + 1e-12; t += grid_step) {
                const double v = value(std::min(t, half_pi), phi);
                if (v > best) {
                    best = v;
                    best_t = std::min(t, half_pi);
                }
            }
            best_t = golden_max([&](double t) { return value(t, phi); },
                                std::max(0.0, best_t - 2.0 * grid_step),
                                std::min(half_pi, best_t + 2.0 * grid_step));
            cert.charu_angles.push_back(best_t);
            in.theta.back() = best_t;
            in.phi[0] = phi;
        }
    }

    cert.best_B = analytic::brgp_general(in).B;
    for (auto& t : in.theta) t = kPi / 4.0;
    in.phi[0] = kPi / 4.0;
    cert.B_at_quarter_pi = analytic::brgp_general(in).B;
    double dev = std::abs(cert.alice_angle - kPi / 4.0);
    for (double a : cert.charu_angles) dev = std::max(dev, std::abs(a - kPi / 4.0));
    cert.max_deviation = dev;
    cert.quarter_pi_optimal = dev <= 1e-3 && cert.B_at_quarter_pi >= cert.best_B - 1e-9;
    return cert;
}

} // namespace binet::solver

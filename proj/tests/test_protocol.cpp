// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "binet/analytic.hpp"
#include "binet/protocol.hpp"

#include <cmath>
#include <random>

using namespace binet;

namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ScenarioConfig sharp_me_config(double charu_G = 1.0) {
    ScenarioConfig c;
    c.alice_rounds = {RoundSpec(kPi / 4.0, 1.0)};
    c.charu_rounds = {RoundSpec(kPi / 4.0, charu_G)};
    return c;
}

ScenarioConfig singlet_ejm_config(double v, double theta, std::vector<double> charu_G) {
    ScenarioConfig c;
    c.joint = JointKind::EJM;
    c.ejm_theta = theta;
    c.source1 = {0.5, v, BellBase::PsiMinus};
    c.source2 = {0.5, v, BellBase::PsiMinus};
    c.alice_rounds = {RoundSpec(0.0, 1.0)};
    for (double g : charu_G) c.charu_rounds.emplace_back(0.0, g);
    return c;
}

// Expectation of a two-qubit observable on an (unnormalized) state.
double expval(const CMat& rho, const CMat& op) { return trace(matmul(rho, op)).real(); }

} // namespace

TEST_CASE("condition_on_bob: entanglement swapping of two phi+ pairs") {
    const CMat rho16 = kron(source_state({}), source_state({}));
    const JointBasis basis = bell_basis();
    double total = 0.0;
    for (int b = 0; b < 4; ++b) {
        const auto [rho, prob] = condition_on_bob(rho16, basis, b);
        CHECK(prob == doctest::Approx(0.25).epsilon(1e-12));
        total += prob;
        // the normalized AC state equals the corresponding Bell projector
        const CMat normalized = add_scaled(1.0 / prob, rho, 0.0, rho);
        CHECK(max_abs_diff(normalized, outer(basis.elements[static_cast<std::size_t>(b)])) < 1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("condition_on_bob: two Werner sources swap to visibility v^2") {
    const double v = 0.8;
    const CMat rho16 =
        kron(source_state({0.5, v, BellBase::PhiPlus}), source_state({0.5, v, BellBase::PhiPlus}));
    const JointBasis basis = bell_basis();
    for (int b = 0; b < 4; ++b) {
        const auto [rho, prob] = condition_on_bob(rho16, basis, b);
        CHECK(prob == doctest::Approx(0.25).epsilon(1e-12));
        const CMat normalized = add_scaled(4.0, rho, 0.0, rho);
        const CMat want = add_scaled(v * v, outer(basis.elements[static_cast<std::size_t>(b)]),
                                     (1.0 - v * v) / 4.0, CMat::identity(4));
        CHECK(max_abs_diff(normalized, want) < 1e-12);
    }
}

TEST_CASE("condition_on_bob: singlet sources under the EJM") {
    // Each outcome is equally likely and the conditioned state carries the
    // spin-flipped element's Bloch structure: A-marginal -sqrt(3)/2 cos(theta)
    // along the vertex, C-marginal +sqrt(3)/2 cos(theta).
    const double theta = 0.4;
    const CMat rho16 = kron(source_state({0.5, 1.0, BellBase::PsiMinus}),
                            source_state({0.5, 1.0, BellBase::PsiMinus}));
    const JointBasis basis = ejm_basis(theta);
    for (int b = 0; b < 4; ++b) {
        const auto [rho, prob] = condition_on_bob(rho16, basis, b);
        CHECK(prob == doctest::Approx(0.25).epsilon(1e-12));
        const CMat normalized = add_scaled(1.0 / prob, rho, 0.0, rho);
        const TetraVertex v = tetra_vertex(b + 1);
        const double expect = std::sqrt(3.0) / 2.0 * std::cos(theta);
        for (int axis = 0; axis < 3; ++axis) {
            const double a_marg = expval(normalized, embed_qubit(pauli(axis), 0));
            const double c_marg = expval(normalized, embed_qubit(pauli(axis), 1));
            CHECK(a_marg == doctest::Approx(-expect * v.bloch[static_cast<std::size_t>(axis)]).epsilon(1e-10));
            CHECK(c_marg == doctest::Approx(expect * v.bloch[static_cast<std::size_t>(axis)]).epsilon(1e-10));
        }
    }
}

TEST_CASE("run_chain: empty histories leave the conditioned state untouched") {
    ScenarioConfig c = sharp_me_config();
    const CMat rho16 = kron(source_state(c.source1), source_state(c.source2));
    for (int b = 0; b < 4; ++b) {
        const CMat direct = condition_on_bob(rho16, bell_basis(), b).first;
        const CMat chained = run_chain(c, b, {}, {});
        CHECK(max_abs_diff(direct, chained) < 1e-14);
    }
}

TEST_CASE("run_chain: a perfect-quality intermediate round is a no-op") {
    ScenarioConfig base = sharp_me_config(0.7);

    ScenarioConfig padded = base;
    // F = 1 corresponds to G -> 0; RoundSpec requires G > 0, so approximate
    // and check continuity of the no-disturbance limit.
    padded.charu_rounds.insert(padded.charu_rounds.begin(), RoundSpec(0.9, 1e-8));

    const int h0[] = {0};
    const CMat with_round = run_chain(padded, 0, {}, h0);
    const CMat without = run_chain(base, 0, {}, {});
    CHECK(max_abs_diff(with_round, without) < 1e-12);
}

TEST_CASE("run_chain: one intermediate Charu round reweights the correlators") {
    // Maximally entangled AC state, one intermediate round at angle t1 with
    // quality F, averaged over settings: the zz correlator shrinks by
    // ((1+F) + (1-F) cos 2 t1)/2 and xx by ((1+F) - (1-F) cos 2 t1)/2.
    const double t1 = 0.3, g1 = 0.77;
    ScenarioConfig c;
    c.alice_rounds = {RoundSpec(kPi / 4.0, 1.0)};
    c.charu_rounds = {RoundSpec(t1, g1), RoundSpec(kPi / 4.0, 1.0)};
    const double f1 = c.charu_rounds[0].F;

    const CMat zz = kron(pauli(2), pauli(2));
    const CMat xx = kron(pauli(0), pauli(0));
    for (int b = 0; b < 4; ++b) {
        const CMat before = run_chain(sharp_me_config(), b, {}, {});
        CMat averaged(4);
        for (int z1 = 0; z1 < 2; ++z1) {
            const int h[] = {z1};
            averaged = add_scaled(1.0, averaged, 0.5, run_chain(c, b, {}, h));
        }
        const double wz = 0.5 * ((1.0 + f1) + (1.0 - f1) * std::cos(2.0 * t1));
        const double wx = 0.5 * ((1.0 + f1) - (1.0 - f1) * std::cos(2.0 * t1));
        CHECK(expval(averaged, zz) == doctest::Approx(wz * expval(before, zz)).epsilon(1e-12));
        CHECK(expval(averaged, xx) == doctest::Approx(wx * expval(before, xx)).epsilon(1e-12));
    }
}

TEST_CASE("joint_probability: completeness and zero-precision limit") {
    ScenarioConfig c;
    c.source1 = {0.3, 0.9, BellBase::PhiPlus};
    c.source2 = {0.45, 0.85, BellBase::PhiPlus};
    c.alice_rounds = {RoundSpec(0.6, 0.8), RoundSpec(kPi / 4.0, 0.9)};
    c.charu_rounds = {RoundSpec(1.0, 0.75)};

    const int xs[] = {1, 0};
    const int zs[] = {1};
    double sum = 0.0;
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 2; ++a)
            for (int cc = 0; cc < 2; ++cc) sum += joint_probability(c, b, xs, a, zs, cc);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // G -> 0 renders the final Alice outcome uniform and state-independent
    ScenarioConfig c2 = sharp_me_config();
    c2.alice_rounds = {RoundSpec(kPi / 4.0, 1e-9)};
    const int x1[] = {0};
    for (int b = 0; b < 4; ++b) {
        double pa0 = 0.0, pa1 = 0.0;
        for (int cc = 0; cc < 2; ++cc) {
            pa0 += joint_probability(c2, b, x1, 0, x1, cc);
            pa1 += joint_probability(c2, b, x1, 1, x1, cc);
        }
        CHECK(pa0 == doctest::Approx(pa1).epsilon(1e-8));
    }
}

TEST_CASE("averaged_table: no averaging for single rounds, weights otherwise") {
    // m = n = 1: table entries equal the joint probabilities directly
    ScenarioConfig c = sharp_me_config(0.8);
    const ProbabilityTable t = averaged_table(c);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int cc = 0; cc < 2; ++cc) {
                        const int xs[] = {x};
                        const int zs[] = {z};
                        CHECK(t.at(x, z, a, b, cc) ==
                              doctest::Approx(joint_probability(c, b, xs, a, zs, cc))
                                  .epsilon(1e-13));
                    }

    // m = 1, n = 2: entries are the half-weighted sum over the history bit
    ScenarioConfig c2 = sharp_me_config();
    c2.charu_rounds = {RoundSpec(0.5, 0.5), RoundSpec(kPi / 4.0, 0.9)};
    const ProbabilityTable t2 = averaged_table(c2);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int cc = 0; cc < 2; ++cc) {
                        double want = 0.0;
                        for (int z1 = 0; z1 < 2; ++z1) {
                            const int xs[] = {x};
                            const int zs[] = {z1, z};
                            want += 0.5 * joint_probability(c2, b, xs, a, zs, cc);
                        }
                        CHECK(t2.at(x, z, a, b, cc) == doctest::Approx(want).epsilon(1e-13));
                    }
}

TEST_CASE("averaged_table: normalized and nonnegative on random configs") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 12; ++rep) {
        ScenarioConfig c;
        const bool ejm = rep % 2 == 1;
        c.joint = ejm ? JointKind::EJM : JointKind::BSM;
        c.ejm_theta = ejm ? kPi / 2.0 * u01(rng) : 0.0;
        const BellBase base = ejm ? BellBase::PsiMinus : BellBase::PhiPlus;
        c.source1 = {ejm ? 0.5 : u01(rng), 0.5 + 0.5 * u01(rng), base};
        c.source2 = {ejm ? 0.5 : u01(rng), 0.5 + 0.5 * u01(rng), base};
        const int m = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < m; ++i)
            c.alice_rounds.emplace_back(kPi / 2.0 * u01(rng), 0.2 + 0.8 * u01(rng));
        for (int i = 0; i < n; ++i)
            c.charu_rounds.emplace_back(kPi / 2.0 * u01(rng), 0.2 + 0.8 * u01(rng));

        const ProbabilityTable t = averaged_table(c);
        for (int x = 0; x < t.settings; ++x)
            for (int z = 0; z < t.settings; ++z) {
                double sum = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 4; ++b)
                        for (int cc = 0; cc < 2; ++cc) {
                            const double p = t.at(x, z, a, b, cc);
                            CHECK(p > -1e-12);
                            sum += p;
                        }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
            }
    }
}

TEST_CASE("averaged_table: symmetric configs produce source-swap symmetric tables") {
    // Swapping the sources and the two chains maps (x, z) -> (1-z, 1-x) and
    // (a, c) -> (c, a); Bell projectors are invariant under swapping Bob's
    // two qubits, so the table must be symmetric under that relabeling.
    ScenarioConfig c;
    c.source1 = {0.4, 0.9, BellBase::PhiPlus};
    c.source2 = {0.4, 0.9, BellBase::PhiPlus};
    c.alice_rounds = {RoundSpec(0.8, 0.6), RoundSpec(kPi / 4.0, 0.9)};
    c.charu_rounds = {RoundSpec(0.8, 0.6), RoundSpec(kPi / 4.0, 0.9)};
    const ProbabilityTable t = averaged_table(c);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int cc = 0; cc < 2; ++cc)
                        CHECK(t.at(x, z, a, b, cc) ==
                              doctest::Approx(t.at(1 - z, 1 - x, cc, b, a)).epsilon(1e-11));
}

TEST_CASE("brgp_from_table: canonical values") {
    // sharp maximally entangled pi/4: B = sqrt2 with I = 1/2, |J| = 1/2
    const BilocalReport rep = evaluate(sharp_me_config());
    CHECK(rep.I == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(rep.J) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.B == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.violated);

    // the first critical precision lands exactly on the bound
    const BilocalReport crit = evaluate(sharp_me_config(0.5));
    CHECK(crit.B == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(crit.violated);

    // product sources cannot violate
    ScenarioConfig prod = sharp_me_config();
    prod.source1.eta = 1.0;
    prod.source2.eta = 1.0;
    CHECK(evaluate(prod).B <= 1.0 + 1e-12);

    CHECK_THROWS_AS((void)tgb_from_table(averaged_table(sharp_me_config())), WrongScenario);
}

TEST_CASE("brgp: B identical across all four Bob outcomes for ME sources") {
    // Single-outcome conditioning: correlators of one branch, normalized by
    // its probability. The paper evaluates one branch; this symmetry is what
    // makes that sufficient.
    ScenarioConfig c = sharp_me_config(0.9);
    const ProbabilityTable t = averaged_table(c);
    std::array<double, 4> Bs{};
    for (int b = 0; b < 4; ++b) {
        double pb = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int cc = 0; cc < 2; ++cc) pb += t.at(0, 0, a, b, cc);
        double I = 0.0, J = 0.0;
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z) {
                double e0 = 0.0, e1 = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int cc = 0; cc < 2; ++cc) {
                        const double sp =
                            (a ? -1.0 : 1.0) * (cc ? -1.0 : 1.0) * t.at(x, z, a, b, cc) / pb;
                        e0 += t.sign(0, b) * sp;
                        e1 += t.sign(1, b) * sp;
                    }
                I += 0.25 * e0;
                J += 0.25 * ((x + z) % 2 ? -1.0 : 1.0) * e1;
            }
        Bs[static_cast<std::size_t>(b)] = std::sqrt(std::abs(I)) + std::sqrt(std::abs(J));
    }
    for (int b = 1; b < 4; ++b) CHECK(Bs[static_cast<std::size_t>(b)] == doctest::Approx(Bs[0]).epsilon(1e-11));
}

TEST_CASE("brgp: B nondecreasing in each final precision") {
    std::vector<double> gs = {0.3, 0.5, 0.7, 0.9, 1.0};
    double prev = -1.0;
    for (double g : gs) {
        const double b = evaluate(sharp_me_config(g)).B;
        CHECK(b >= prev - 1e-12);
        prev = b;
    }
    // and in the Alice precision with a fixed Charu chain
    prev = -1.0;
    for (double g : gs) {
        ScenarioConfig c = sharp_me_config(0.8);
        c.alice_rounds = {RoundSpec(kPi / 4.0, g)};
        const double b = evaluate(c).B;
        CHECK(b >= prev - 1e-12);
        prev = b;
    }
}

TEST_CASE("tgb_from_table: canonical values") {
    // two singlets, sharp Pauli settings, EJM(0): BE = 4, Z = 0
    const BilocalReport rep = evaluate(singlet_ejm_config(1.0, 0.0, {1.0}));
    CHECK(rep.BE == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(rep.Z) < 1e-12);
    CHECK(rep.violated);

    // boundary at G' = 5/7
    const BilocalReport crit = evaluate(singlet_ejm_config(1.0, 0.0, {5.0 / 7.0}));
    CHECK(crit.BE == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(crit.Z) < 1e-12);
    CHECK_FALSE(crit.violated);

    // low visibility: no violation across a sweep
    for (double v : {0.1, 0.3, 0.5, 0.7, 0.8}) {
        const BilocalReport r = evaluate(singlet_ejm_config(v, 0.0, {1.0}));
        CHECK(r.BE <= 3.0 + 5.0 * r.Z + 1e-9);
    }

    CHECK_THROWS_AS((void)brgp_from_table(averaged_table(singlet_ejm_config(1.0, 0.0, {1.0}))),
                    WrongScenario);
}

TEST_CASE("tgb tables are non-signaling across marginal slices") {
    const ProbabilityTable t = averaged_table(singlet_ejm_config(0.9, 0.3, {0.8, 0.9}));
    // <A_x B^y> computed at each z must agree
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            std::array<double, 3> slices{};
            for (int z = 0; z < 3; ++z) {
                double e = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 4; ++b)
                        for (int cc = 0; cc < 2; ++cc)
                            e += t.sign(y, b) * (a ? -1.0 : 1.0) * t.at(x, z, a, b, cc);
                slices[static_cast<std::size_t>(z)] = e;
            }
            CHECK(slices[1] == doctest::Approx(slices[0]).epsilon(1e-11));
            CHECK(slices[2] == doctest::Approx(slices[0]).epsilon(1e-11));
        }
}

TEST_CASE("bell label search pins the configured map") {
    const auto maps = search_bell_label_maps();
    // Exactly the four bit-pair assignments compatible with the correlator
    // structure survive; the configured map is one of them.
    CHECK(maps.size() == 4);
    const auto configured = bell_basis().bell_bits;
    bool found = false;
    for (const auto& m : maps) found = found || m == configured;
    CHECK(found);
}

TEST_CASE("table serialization") {
    const ProbabilityTable t = averaged_table(sharp_me_config(0.8));
    const std::string csv = table_to_csv(t);
    CHECK(csv.rfind("x,z,a,bob_label,c,p\n", 0) == 0);
    // 2*2*2*4*2 rows + header
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 65);
    // deterministic: serializing twice gives identical bytes
    CHECK(csv == table_to_csv(t));

    const std::string json = table_to_json(t);
    CHECK(json.find("\"kind\"") != std::string::npos);
    CHECK(json.find("\"bsm\"") != std::string::npos);
}

TEST_CASE("config validation errors") {
    ScenarioConfig c;
    CHECK_THROWS_AS((void)averaged_table(c), ConfigError);

    ScenarioConfig ok = sharp_me_config();
    const int too_long[] = {0, 1};
    CHECK_THROWS_AS((void)run_chain(ok, 0, too_long, {}), ConfigError);

    const int bad_setting[] = {2};
    ScenarioConfig two = sharp_me_config();
    two.alice_rounds.emplace_back(kPi / 4.0, 1.0);
    CHECK_THROWS_AS((void)run_chain(two, 0, bad_setting, {}), ConfigError);
}

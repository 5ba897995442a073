// SPDX-License-Identifier: Apache-2.0

#include "binet/protocol.hpp"
#include "binet/kernels.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace binet {

namespace {

constexpr double kViolationMargin = 1e-9;

void validate(const ScenarioConfig& config) {
    if (config.alice_rounds.empty() || config.charu_rounds.empty())
        throw ConfigError("scenario needs at least one round per chain");
    if (config.joint == JointKind::EJM &&
        (config.ejm_theta < 0.0 || config.ejm_theta > kPi / 2.0 + 1e-12))
        throw ConfigError("ejm_theta must lie in [0, pi/2]");
}

void check_history(std::span<const int> hist, int expected_len, int settings,
                   const char* what) {
    if (static_cast<int>(hist.size()) != expected_len)
        throw ConfigError(std::string("history length mismatch for ") + what);
    for (int s : hist)
        if (s < 0 || s >= settings)
            throw ConfigError(std::string("setting out of range for ") + what);
}

std::string outcome_label(const ProbabilityTable& t, int b) {
    if (t.kind == JointKind::BSM) {
        return std::to_string(t.bell_bits[static_cast<std::size_t>(b)][0]) +
               std::to_string(t.bell_bits[static_cast<std::size_t>(b)][1]);
    }
    std::string s;
    for (int k = 0; k < 3; ++k)
        s += t.sign_triple[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)] > 0 ? '+' : '-';
    return s;
}

} // namespace

JointBasis joint_basis(const ScenarioConfig& config) {
    return config.joint == JointKind::BSM ? bell_basis() : ejm_basis(config.ejm_theta);
}

CMat round_direction(const ScenarioConfig& config, Party party, int round_index,
                     int setting) {
    const auto& rounds = party == Party::Alice ? config.alice_rounds : config.charu_rounds;
    if (round_index < 0 || round_index >= static_cast<int>(rounds.size()))
        throw ConfigError("round index out of range");
    if (config.joint == JointKind::BSM)
        return observable(rounds[static_cast<std::size_t>(round_index)].angle, setting, party);
    if (setting < 0 || setting > 2) throw ConfigError("EJM setting out of range");
    return pauli(setting);
}

std::pair<CMat, double> condition_on_bob(const CMat& rho16, const JointBasis& basis,
                                         int outcome) {
    if (rho16.dim() != 16) throw DimensionError("condition_on_bob: state must be 16x16");
    if (outcome < 0 || outcome > 3) throw ParamError("condition_on_bob: outcome must be 0..3");
    CMat out(4);
    kernels::active().project_mid(rho16.data(), basis.elements[static_cast<std::size_t>(outcome)].data(),
                                  out.data());
    return {out, trace(out).real()};
}

CMat run_chain(const ScenarioConfig& config, int bob_outcome,
               std::span<const int> alice_history, std::span<const int> charu_history) {
    validate(config);
    check_history(alice_history, config.m() - 1, config.settings(), "Alice");
    check_history(charu_history, config.n() - 1, config.settings(), "Charu");

    const CMat rho16 = kron(source_state(config.source1), source_state(config.source2));
    CMat rho = condition_on_bob(rho16, joint_basis(config), bob_outcome).first;

    for (std::size_t i = 0; i < alice_history.size(); ++i) {
        const CMat dir = round_direction(config, Party::Alice, static_cast<int>(i),
                                         alice_history[i]);
        rho = weak_map_unconditional(rho, 0, dir, config.alice_rounds[i].F);
    }
    for (std::size_t i = 0; i < charu_history.size(); ++i) {
        const CMat dir = round_direction(config, Party::Charu, static_cast<int>(i),
                                         charu_history[i]);
        rho = weak_map_unconditional(rho, 1, dir, config.charu_rounds[i].F);
    }
    return rho;
}

double joint_probability(const ScenarioConfig& config, int bob_outcome,
                         std::span<const int> alice_settings, int a,
                         std::span<const int> charu_settings, int c) {
    validate(config);
    check_history(alice_settings, config.m(), config.settings(), "Alice");
    check_history(charu_settings, config.n(), config.settings(), "Charu");

    CMat rho = run_chain(config, bob_outcome, alice_settings.first(alice_settings.size() - 1),
                         charu_settings.first(charu_settings.size() - 1));

    const int xm = alice_settings[alice_settings.size() - 1];
    const int zn = charu_settings[charu_settings.size() - 1];
    const CMat da = round_direction(config, Party::Alice, config.m() - 1, xm);
    const CMat dc = round_direction(config, Party::Charu, config.n() - 1, zn);
    rho = weak_map_conditional(rho, 0, da, config.alice_rounds.back().G, a);
    rho = weak_map_conditional(rho, 1, dc, config.charu_rounds.back().G, c);
    return trace(rho).real();
}

ProbabilityTable averaged_table(const ScenarioConfig& config) {
    validate(config);
    const int s = config.settings();
    const int m = config.m(), n = config.n();

    ProbabilityTable table;
    table.kind = config.joint;
    table.settings = s;
    const JointBasis basis = joint_basis(config);
    table.bell_bits = basis.bell_bits;
    table.sign_triple = basis.sign_triple;
    table.p.assign(static_cast<std::size_t>(s) * s * 2 * 4 * 2, 0.0);

    const int hist_len = m - 1 + n - 1;
    long long hist_count = 1;
    for (int i = 0; i < hist_len; ++i) hist_count *= s;
    const double weight = 1.0 / static_cast<double>(hist_count);

    const CMat rho16 = kron(source_state(config.source1), source_state(config.source2));

    std::vector<int> xh(static_cast<std::size_t>(std::max(0, m - 1)));
    std::vector<int> zh(static_cast<std::size_t>(std::max(0, n - 1)));

    for (int b = 0; b < 4; ++b) {
        const CMat rho_b = condition_on_bob(rho16, basis, b).first;
        for (long long h = 0; h < hist_count; ++h) {
            long long rem = h;
            for (auto& x : xh) { x = static_cast<int>(rem % s); rem /= s; }
            for (auto& z : zh) { z = static_cast<int>(rem % s); rem /= s; }

            CMat rho = rho_b;
            for (std::size_t i = 0; i < xh.size(); ++i)
                rho = weak_map_unconditional(rho, 0,
                                             round_direction(config, Party::Alice, static_cast<int>(i), xh[i]),
                                             config.alice_rounds[i].F);
            for (std::size_t i = 0; i < zh.size(); ++i)
                rho = weak_map_unconditional(rho, 1,
                                             round_direction(config, Party::Charu, static_cast<int>(i), zh[i]),
                                             config.charu_rounds[i].F);

            for (int x = 0; x < s; ++x) {
                const CMat da = round_direction(config, Party::Alice, m - 1, x);
                for (int a = 0; a < 2; ++a) {
                    const CMat rho_a =
                        weak_map_conditional(rho, 0, da, config.alice_rounds.back().G, a);
                    for (int z = 0; z < s; ++z) {
                        const CMat dc = round_direction(config, Party::Charu, n - 1, z);
                        for (int c = 0; c < 2; ++c) {
                            const double p =
                                trace(weak_map_conditional(rho_a, 1, dc,
                                                           config.charu_rounds.back().G, c))
                                    .real();
                            table.at(x, z, a, b, c) += weight * p;
                        }
                    }
                }
            }
        }
    }
    return table;
}

BilocalReport brgp_from_table(const ProbabilityTable& table) {
    if (table.kind != JointKind::BSM)
        throw WrongScenario("brgp_from_table: table is not Bell-basis labeled");
    BilocalReport rep;
    rep.kind = JointKind::BSM;
    double I = 0.0, J = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            double e0 = 0.0, e1 = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c) {
                        const double signed_p =
                            (a ? -1.0 : 1.0) * (c ? -1.0 : 1.0) * table.at(x, z, a, b, c);
                        e0 += table.sign(0, b) * signed_p;
                        e1 += table.sign(1, b) * signed_p;
                    }
            I += 0.25 * e0;
            J += 0.25 * ((x + z) % 2 ? -1.0 : 1.0) * e1;
        }
    rep.I = I;
    rep.J = J;
    rep.B = std::sqrt(std::abs(I)) + std::sqrt(std::abs(J));
    rep.violated = rep.B > 1.0 + kViolationMargin;
    return rep;
}

BilocalReport tgb_from_table(const ProbabilityTable& table) {
    if (table.kind != JointKind::EJM)
        throw WrongScenario("tgb_from_table: table is not EJM labeled");
    const int s = table.settings;

    // Correlators; marginals are averaged over the absent party's setting
    // (the engine's tables are non-signaling, so all slices agree).
    auto full = [&](int x, int y, int z) {
        double e = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 2; ++c)
                    e += table.sign(y, b) * (a ? -1.0 : 1.0) * (c ? -1.0 : 1.0) *
                         table.at(x, z, a, b, c);
        return e;
    };
    auto pair_ab = [&](int x, int y) {
        double e = 0.0;
        for (int z = 0; z < s; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c)
                        e += table.sign(y, b) * (a ? -1.0 : 1.0) * table.at(x, z, a, b, c);
        return e / s;
    };
    auto pair_bc = [&](int y, int z) {
        double e = 0.0;
        for (int x = 0; x < s; ++x)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c)
                        e += table.sign(y, b) * (c ? -1.0 : 1.0) * table.at(x, z, a, b, c);
        return e / s;
    };
    auto pair_ac = [&](int x, int z) {
        double e = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 2; ++c)
                    e += (a ? -1.0 : 1.0) * (c ? -1.0 : 1.0) * table.at(x, z, a, b, c);
        return e;
    };
    auto single_a = [&](int x) {
        double e = 0.0;
        for (int z = 0; z < s; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c)
                        e += (a ? -1.0 : 1.0) * table.at(x, z, a, b, c);
        return e / s;
    };
    auto single_b = [&](int y) {
        double e = 0.0;
        for (int x = 0; x < s; ++x)
            for (int z = 0; z < s; ++z)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 4; ++b)
                        for (int c = 0; c < 2; ++c)
                            e += table.sign(y, b) * table.at(x, z, a, b, c);
        return e / (s * s);
    };
    auto single_c = [&](int z) {
        double e = 0.0;
        for (int x = 0; x < s; ++x)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c)
                        e += (c ? -1.0 : 1.0) * table.at(x, z, a, b, c);
        return e / s;
    };

    BilocalReport rep;
    rep.kind = JointKind::EJM;

    double be = 0.0;
    for (int y = 0; y < 3; ++y) be += pair_bc(y, y) - pair_ab(y, y);
    be /= 3.0;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (x != y && y != z && x != z) be -= full(x, y, z);
    rep.BE = be;

    double zmax = 0.0;
    auto track = [&](double v) { zmax = std::max(zmax, std::abs(v)); };
    for (int x = 0; x < 3; ++x) track(single_a(x));
    for (int y = 0; y < 3; ++y) track(single_b(y));
    for (int z = 0; z < 3; ++z) track(single_c(z));
    for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 3; ++z) track(pair_ac(x, z));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (x != y) track(pair_ab(x, y));
    for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
            if (y != z) track(pair_bc(y, z));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (!(x != y && y != z && x != z)) track(full(x, y, z));
    rep.Z = zmax;

    rep.violated = rep.BE > 3.0 + 5.0 * rep.Z + kViolationMargin;
    return rep;
}

BilocalReport evaluate(const ScenarioConfig& config) {
    const ProbabilityTable table = averaged_table(config);
    return config.joint == JointKind::BSM ? brgp_from_table(table) : tgb_from_table(table);
}

std::vector<std::array<std::array<int, 2>, 4>> search_bell_label_maps() {
    // Sharp maximally entangled scenario at theta = phi = pi/4; a label map is
    // admissible when it yields B = sqrt(2).
    ScenarioConfig config;
    config.alice_rounds = {RoundSpec(kPi / 4.0, 1.0)};
    config.charu_rounds = {RoundSpec(kPi / 4.0, 1.0)};
    ProbabilityTable table = averaged_table(config);

    std::array<std::array<int, 2>, 4> labels = {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    std::array<int, 4> perm = {0, 1, 2, 3};
    std::vector<std::array<std::array<int, 2>, 4>> found;
    do {
        ProbabilityTable t = table;
        for (int i = 0; i < 4; ++i) t.bell_bits[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        const BilocalReport rep = brgp_from_table(t);
        if (std::abs(rep.B - std::sqrt(2.0)) < 1e-9) found.push_back(t.bell_bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return found;
}

std::string table_to_csv(const ProbabilityTable& table) {
    std::string out = "x,z,a,bob_label,c,p\n";
    char buf[64];
    for (int x = 0; x < table.settings; ++x)
        for (int z = 0; z < table.settings; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c) {
                        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%s,%d,%.17g\n", x, z, a,
                                      outcome_label(table, b).c_str(), c,
                                      table.at(x, z, a, b, c));
                        out += buf;
                    }
    return out;
}

std::string table_to_json(const ProbabilityTable& table) {
    nlohmann::json j;
    j["kind"] = table.kind == JointKind::BSM ? "bsm" : "ejm";
    j["settings"] = table.settings;
    nlohmann::json rows = nlohmann::json::array();
    for (int x = 0; x < table.settings; ++x)
        for (int z = 0; z < table.settings; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c)
                        rows.push_back({{"x", x},
                                        {"z", z},
                                        {"a", a},
                                        {"bob_label", outcome_label(table, b)},
                                        {"c", c},
                                        {"p", table.at(x, z, a, b, c)}});
    j["rows"] = rows;
    return j.dump(2);
}

} // namespace binet

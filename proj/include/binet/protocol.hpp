// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/measurements.hpp"
#include "binet/states.hpp"

#include <span>
#include <string>
#include <vector>

namespace binet {

// Full sequential scenario: two sources, Bob's joint measurement, an Alice
// chain of m rounds and a Charu chain of n rounds. Intermediate rounds act
// through the outcome-averaged map with their quality factor F; the final
// round of each chain is outcome-conditioned with its precision G.
struct ScenarioConfig {
    SourceSpec source1, source2;
    JointKind joint = JointKind::BSM;
    double ejm_theta = 0.0;
    std::vector<RoundSpec> alice_rounds; // length m >= 1
    std::vector<RoundSpec> charu_rounds; // length n >= 1

    int settings() const { return joint == JointKind::BSM ? 2 : 3; }
    int m() const { return static_cast<int>(alice_rounds.size()); }
    int n() const { return static_cast<int>(charu_rounds.size()); }
};

// History-averaged joint distribution P(a, b, c | x, z) for the final round
// pair, indexed by final settings (x, z), final outcomes (a, c) and Bob's
// outcome b.
struct ProbabilityTable {
    JointKind kind = JointKind::BSM;
    int settings = 2;
    std::array<std::array<int, 2>, 4> bell_bits{};
    std::array<std::array<int, 3>, 4> sign_triple{};
    std::vector<double> p; // [x][z][a][b][c]

    double& at(int x, int z, int a, int b, int c) {
        return p[static_cast<std::size_t>((((x * settings + z) * 2 + a) * 4 + b) * 2 + c)];
    }
    double at(int x, int z, int a, int b, int c) const {
        return p[static_cast<std::size_t>((((x * settings + z) * 2 + a) * 4 + b) * 2 + c)];
    }
    int sign(int y, int outcome) const {
        if (kind == JointKind::BSM) return bell_bits[static_cast<std::size_t>(outcome)][static_cast<std::size_t>(y)] ? -1 : 1;
        return sign_triple[static_cast<std::size_t>(outcome)][static_cast<std::size_t>(y)];
    }
};

// Result of testing one bilocal functional on a table.
struct BilocalReport {
    JointKind kind = JointKind::BSM;
    double I = 0.0, J = 0.0, B = 0.0; // BRGP
    double BE = 0.0, Z = 0.0;         // EJM / TGB
    bool violated = false;
    double bound() const { return kind == JointKind::BSM ? 1.0 : 3.0 + 5.0 * Z; }
    double functional() const { return kind == JointKind::BSM ? B : BE; }
};

// The joint basis a config implies (Bell basis or EJM at the config's theta).
JointBasis joint_basis(const ScenarioConfig& config);

// Direction measured by the given party in the given round under `setting`.
CMat round_direction(const ScenarioConfig& config, Party party, int round_index, int setting);

// Bob's conditioning step: project the middle qubit pair onto basis element
// `outcome` and trace it out. Returns the unnormalized Alice-Charu state; its
// trace is the outcome probability (also returned).
std::pair<CMat, double> condition_on_bob(const CMat& rho16, const JointBasis& basis,
                                         int outcome);

// Applies the intermediate (outcome-averaged) rounds of both chains for the
// given measurement-choice histories. Histories have lengths m-1 and n-1.
CMat run_chain(const ScenarioConfig& config, int bob_outcome, std::span<const int> alice_history,
               std::span<const int> charu_history);

// P(a_m, b, c_n | x_1..x_m, z_1..z_n): full histories including the final
// settings; the final rounds act through the conditional map.
double joint_probability(const ScenarioConfig& config, int bob_outcome,
                         std::span<const int> alice_settings, int a,
                         std::span<const int> charu_settings, int c);

// History-averaged table with uniform weight settings^-(m+n-2).
ProbabilityTable averaged_table(const ScenarioConfig& config);

// BRGP functional: I, J, B = sqrt|I| + sqrt|J|; violated iff B > 1 (margin 1e-9).
BilocalReport brgp_from_table(const ProbabilityTable& table);

// TGB functional: BE and the Z penalty (max |correlator| over every marginal
// and full correlator absent from BE); violated iff BE > 3 + 5Z (margin 1e-9).
BilocalReport tgb_from_table(const ProbabilityTable& table);

// Table + the functional matching the config's joint measurement.
BilocalReport evaluate(const ScenarioConfig& config);

// Exhaustive search over the 4! assignments of bit-pair labels to the Bell
// vectors; returns those for which the sharp maximally entangled scenario at
// pi/4 yields B = sqrt(2). Pins the label map empirically.
std::vector<std::array<std::array<int, 2>, 4>> search_bell_label_maps();

// Serialization: columns x, z, a, bob_label, c, p with '.' decimals and '\n'
// line ends.
std::string table_to_csv(const ProbabilityTable& table);
std::string table_to_json(const ProbabilityTable& table);

} // namespace binet

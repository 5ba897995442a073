// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/protocol.hpp"

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace binet::solver {

enum class Scenario { UniBRGP, BiEqualBRGP, UniEJM };
enum class Family { NME, Werner };

// Two sources plus the joint-measurement parameter for the EJM scenario.
struct ResourceSpec {
    SourceSpec s1, s2;
    double ejm_theta = 0.0;
};

struct SharingResult {
    std::vector<double> schedule; // critical precisions, all <= 1
    double next_root = std::numeric_limits<double>::quiet_NaN(); // first critical > 1
    int max_rounds = 0;
    std::vector<std::pair<int, int>> frontier; // only filled by frontier searches
};

// Per-round critical precisions: entry k solves "functional = bound" with all
// earlier rounds pinned at their criticals; iteration stops once the root
// exceeds 1 (reported in next_root). Throws NoViolation when even the first
// round needs G > 1.
SharingResult critical_schedule(Scenario scenario, const ResourceSpec& resource,
                                int cap = 16);

// Length of the feasible schedule; 0 when no violation is possible.
int max_rounds(Scenario scenario, const ResourceSpec& resource);

// Bisection (tolerance 1e-9 on the family parameter) for the entanglement at
// which `target_rounds` first becomes feasible, mapped through the von
// Neumann entropy (NME) or the entanglement of formation (Werner).
// Throws Unreachable when no parameter attains the target.
double entanglement_threshold(int target_rounds, Family family, Scenario scenario,
                              double ejm_theta = 0.0);

// Maximal balanced-chain strength for a single m-round chain: the largest t
// such that the critical recursion starting at G_1 = t keeps every precision
// inside (0,1]. Equals the backward-anchored construction with G_m = 1.
double chain_strength(int m);

// Numeric certificate for chain_strength: grid scan over the first-round
// precision (step `grid_step`) plus seeded random multistart coordinate
// ascent over the full G-vector. Returns the best min-strength found.
double chain_strength_search(int m, double grid_step, int restarts, std::uint64_t seed);

// Whether m Alices and n Charus admit a joint schedule with every pairwise
// functional strictly above the bilocal bound, for the given resource factor.
bool pair_feasible(int m, int n, double resource_factor);

struct FrontierResult {
    std::vector<std::pair<int, int>> per_m;  // (m, max feasible n), m with max n >= 1
    std::vector<std::pair<int, int>> pareto; // Pareto-maximal subset
};
FrontierResult bidirectional_frontier(const ResourceSpec& resource,
                                      bool allow_unequal_precision, int cap = 8);

struct AngleCertificate {
    std::vector<double> charu_angles; // theta_1 .. theta_n at the optimum
    double alice_angle = 0.0;         // phi at the optimum
    double best_B = 0.0;              // maximum found
    double B_at_quarter_pi = 0.0;     // value with every angle at pi/4
    double max_deviation = 0.0;       // max |angle - pi/4| over all components
    bool quarter_pi_optimal = false;  // deviation <= 1e-3 and pi/4 within 1e-9 of max
};

// Grid search plus local refinement over (theta_1..theta_n, phi) maximizing B
// at the resource's critical precisions. Unidirectional BRGP scenario only.
AngleCertificate optimal_angle_search(Scenario scenario, int round_count,
                                      const ResourceSpec& resource,
                                      double grid_step = 0.01);

// Resource factor of a source pair (see analytic::resource_factor).
double resource_factor_of(const ResourceSpec& resource);

} // namespace binet::solver

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/protocol.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace binet::verify {

struct OracleStats {
    int total = 0;
    int passed = 0;
    double max_b_diff = 0.0;       // worst |engine - closed form| over the suite
    double max_norm_dev = 0.0;     // worst per-setting |sum p - 1|
    double max_negative = 0.0;     // most negative table entry encountered
    std::vector<std::string> failures;
    bool ok() const { return passed == total && failures.empty(); }
};

// Randomized engine-vs-closed-form equivalence suite. Samples `samples`
// scenarios (alternating Bell-basis scenarios with noisy non-maximally
// entangled sources at arbitrary angles, and EJM scenarios with singlet-based
// Werner sources), m, n <= 3, and checks:
//   - engine functional vs closed form to `tol`,
//   - table normalization to 1e-10 and nonnegativity to 1e-12.
// Deterministic for a fixed seed.
OracleStats oracle_suite(int samples, std::uint64_t seed, double tol = 1e-9);

// Plain-text report, stable across runs for fixed inputs.
std::string format_report(const OracleStats& stats);

} // namespace binet::verify

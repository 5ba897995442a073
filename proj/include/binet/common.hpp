// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace binet {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. Everything derives from std::runtime_error so callers can
// catch broadly at the CLI boundary and narrowly in tests.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct NormalizationError : Error { using Error::Error; };
struct StateError : Error { using Error::Error; };
struct ParamError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct WrongScenario : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct NoViolation : Error { using Error::Error; };
struct Unreachable : Error { using Error::Error; };

} // namespace binet

#pragma once

#include <stdexcept>
#include <string>

namespace timeseed {

/// Invalid configuration or arguments: bad parameter values, dimension
/// mismatches, malformed input files.  CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure: NaN/overflow in a state, non-convergent eigensolver,
/// invalid bisection bracket.  CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured resource cap was exceeded (matrix dimension, step budget).
/// CLI exit code 4.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace timeseed

#pragma once

#include <stdexcept>
#include <string>

namespace quench {

/// Bad input: a precondition on a configuration or argument does not hold.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A run produced a non-finite or otherwise unusable number.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace quench

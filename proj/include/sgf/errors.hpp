#pragma once

#include <stdexcept>
#include <string>

namespace sgf {

/// Malformed or out-of-range input supplied by a caller or a file.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A stated precondition of an operation does not hold.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The instance exceeds a size guard of an exponential routine.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace sgf

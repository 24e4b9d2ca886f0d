#pragma once

#include <stdexcept>

namespace chromacy {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed documents (bad JSON shape, unknown format tag, bad field values).
struct ParseError : Error {
    using Error::Error;
};

// Violated preconditions on otherwise well-formed inputs.
struct DomainError : Error {
    using Error::Error;
};

// Exact-arithmetic failures (overflow, zero denominator).
struct ArithmeticError : Error {
    using Error::Error;
};

} // namespace chromacy

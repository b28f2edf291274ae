#pragma once

#include <stdexcept>
#include <string>

namespace nrank {

// Malformed user input (matrix files, polynomial strings, curve specs).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap was hit (factorization degree, modulus budget,
// enumeration budget, ...). The message names the failing stage.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Interval precision escalation ran out before a decision could be made.
struct PrecisionFailure : std::runtime_error {
    explicit PrecisionFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nrank

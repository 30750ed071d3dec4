#pragma once

#include <stdexcept>
#include <string>

namespace nex {

// Error taxonomy shared by the library and the CLI exit-code mapping.

/// Malformed input document or flag value.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A domain invariant is violated (bad graph, invalid allocation, degree overflow, ...).
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// Caller passed an argument outside an operation's precondition (unknown vertex, edge not matched, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Instance exceeds a configured enumeration cap.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Certification cannot decide (margins too small, capped trail, ...).
struct InconclusiveError : std::runtime_error {
    explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

/// BP extraction selected edges sharing a vertex (non-unique optimum).
struct AmbiguousOptimumError : std::runtime_error {
    explicit AmbiguousOptimumError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nex

#pragma once

#include <stdexcept>
#include <string>

namespace reclaim {

/** Malformed input data: bad CSV structure, arity mismatch, bad escapes. */
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Structural violations: duplicate columns, missing key columns, invalid keys. */
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Filesystem-level failures: unreadable paths, write failures. */
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** A caller violated an operation's precondition. */
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace reclaim

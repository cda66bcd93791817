#pragma once

#include <stdexcept>

namespace groupdet {

// Input that fails a grammar: malformed group spec, bad coefficient token.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid input outside an operation's domain: wrong assignment
// length, composite q, missing C_p factor, box over the evaluation ceiling.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An arithmetic invariant failed. Indicates a bug, never a user error.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace groupdet

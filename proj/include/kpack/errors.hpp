#pragma once

#include <stdexcept>

namespace kpack {

// Instance exceeds a configured search guard. Distinct from bad input so
// callers can map it to its own exit status.
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file (DIMACS graph, DIMACS CNF, JSON bundle, ...).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace kpack

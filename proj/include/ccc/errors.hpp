#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

// Invalid argument values or inconsistent inputs detected up front.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Instance exceeds a hard size cap (exact oracle, cluster LP enumeration).
struct SizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical breakdown inside the LP solver (no acceptable pivot left).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries a 1-based line number when known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), line_number(0) {}
    int line_number;
};

}  // namespace ccc

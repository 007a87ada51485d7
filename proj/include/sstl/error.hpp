#pragma once

#include <stdexcept>
#include <string>

namespace sstl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed formula / trace / model text. Carries line:column when known.
struct ParseError : Error {
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line(line), column(column) {}
    explicit ParseError(const std::string& msg) : Error(msg), line(0), column(0) {}
    int line, column;
};

// Semantic misuse detected at evaluation time (wrong dialect, out-of-range
// tick, unbound obligation, factor mismatch).
struct EvalError : Error {
    using Error::Error;
};

// Model-level configuration problems (domain violations, unresolvable
// signal names, conflicting writes).
struct ModelError : Error {
    using Error::Error;
};

// Search exceeded the configured state or depth budget.
struct ResourceLimitError : Error {
    ResourceLimitError(const std::string& msg, long long states_explored)
        : Error(msg), states_explored(states_explored) {}
    long long states_explored;
};

}  // namespace sstl

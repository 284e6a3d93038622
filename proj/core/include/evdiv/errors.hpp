#pragma once

#include <stdexcept>
#include <string>

namespace evdiv {

// Two operands live in different quadratic fields Q[sqrt(D)].
struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An adaptive-precision comparison hit its precision cap without the
// intervals separating. Usually means the compared magnitudes are equal,
// which is a degenerate input rather than a rounding problem.
struct UndecidableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A division asserted to be exact was not. Signals a bug or a violated
// precondition, never a data-dependent condition.
struct NonExactDivisionError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace evdiv

#pragma once

#include <stdexcept>
#include <string>

namespace diffmc {

// Invalid vertices, malformed parameters, violated preconditions.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// DN_r(u,v) is only defined for same-colored u,v.
struct UndefinedPairError : InputError {
    using InputError::InputError;
};

// Formula text rejected by the parser; positions are 1-based.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

}  // namespace diffmc

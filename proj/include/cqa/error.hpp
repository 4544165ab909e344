#pragma once

#include <stdexcept>
#include <string>

namespace cqa {

// Bad user input: syntax errors, ill-formed dependencies, violated engine
// preconditions. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error with source position.
class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line, int col)
        : InputError(msg + " (line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ")"),
          line(line),
          col(col) {}

    int line;
    int col;
};

// A configured resource cap was exceeded (subset enumeration, formula size,
// evaluation steps). Maps to CLI exit code 3.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cqa

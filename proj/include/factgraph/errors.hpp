#pragma once

#include <stdexcept>
#include <string>

namespace fg {

// Input that violates a documented precondition or file format.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configurable size guard tripped. Distinct from ValidationError so the CLI
// can map it to its own exit code.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : ValidationError {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : ValidationError("parse error at " + std::to_string(line_) + ":" +
                          std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

}  // namespace fg

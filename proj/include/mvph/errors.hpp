#pragma once

#include <stdexcept>
#include <string>

namespace mvph {

struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicatePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two workers disagree about a value that must be computed identically.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Message arrived in the wrong phase, or a worker is missing required data.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The second page does not satisfy the collapse hypothesis.
struct CollapseError : std::runtime_error {
    std::string term;
    std::string generator;
    CollapseError(std::string term_, std::string generator_)
        : std::runtime_error("collapse check failed on " + term_ + ": " + generator_),
          term(std::move(term_)), generator(std::move(generator_)) {}
};

struct ParseError : std::runtime_error {
    long line;
    ParseError(long line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

} // namespace mvph

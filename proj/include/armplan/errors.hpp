#pragma once

#include <stdexcept>
#include <string>

namespace armplan {

/// Invalid ellipse semi-axes (requires 0 < b <= a).
struct InvalidAxes : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Control / parameter dimension disagreement.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Obstacle contains no grid node at the requested resolution.
struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario file could not be parsed; carries the offending line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/// Scenario parsed but violates an invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace armplan

#pragma once

#include <stdexcept>
#include <string>

namespace wiretap {

// Dimension or shape disagreement between operands.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation called out of order (e.g. backward before forward, phase skipped).
class StateError : public std::runtime_error {
public:
    explicit StateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument or configuration value.
class ParamError : public std::runtime_error {
public:
    explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite or degenerate numeric input.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem and serialization failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wiretap

#pragma once

#include <stdexcept>
#include <string>

namespace infconv {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Index outside the grid, or point off the grid.
struct BoundsError : Error {
    using Error::Error;
};

// Array/point dimension does not match the object it is used with.
struct ShapeError : Error {
    using Error::Error;
};

// A computation would exceed a configured size budget.
struct SizeError : Error {
    using Error::Error;
};

// Not enough finite data (or samples) to produce a meaningful answer.
struct InsufficientDataError : Error {
    using Error::Error;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// The answer is not unique where a unique one is required.
struct AmbiguityError : Error {
    using Error::Error;
};

// The requested combination is outside what this library represents.
struct UnsupportedError : Error {
    using Error::Error;
};

// Malformed input value, e.g. an attempt to construct -inf or NaN.
struct ValueError : Error {
    using Error::Error;
};

// Malformed configuration or JSON input.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace infconv

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zsq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument values: bad lengths, out-of-range parameters, illegal forms.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// The request exceeds an explicit feasibility guard.
class FeasibilityError : public Error {
public:
    using Error::Error;
};

/// Operands belong to groups with different moduli.
class ContextMismatchError : public Error {
public:
    using Error::Error;
};

/// Sequence text does not conform to the grammar; carries the byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Removal of a non-subsequence; the message names the offending element.
class SubsequenceError : public Error {
public:
    using Error::Error;
};

/// An element is outside the domain of a partial map (e.g. not in a kernel).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An internal invariant was violated; indicates a bug, not a user error.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace zsq

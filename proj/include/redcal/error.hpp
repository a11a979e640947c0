#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace redcal {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number (0 when unknown).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Truncated or malformed bit stream. Carries the offending bit offset.
class DecodeError : public Error {
public:
    DecodeError(std::size_t bit_offset, const std::string& what)
        : Error("bit " + std::to_string(bit_offset) + ": " + what), offset_(bit_offset) {}
    std::size_t bit_offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A value outside its declared range (meta fields, capacities).
class RangeError : public Error {
public:
    using Error::Error;
};

/// An exhaustive routine was asked to run above its size cap.
class CapError : public Error {
public:
    using Error::Error;
};

/// A precondition on the call itself was violated.
class ContractError : public Error {
public:
    using Error::Error;
};

} // namespace redcal

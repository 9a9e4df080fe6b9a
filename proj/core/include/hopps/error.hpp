#pragma once

#include <stdexcept>
#include <string>

namespace hopps {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (QASM, JSON, DIMACS). Carries a 1-based position when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? message
                          : message + " (line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ")"),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Structurally valid input that violates a domain rule (bad qubit, singular matrix, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Every step count up to the configured ceiling was proven unsatisfiable.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

/// The wall-clock budget ran out before any satisfying model was found.
class TimeoutError : public Error {
public:
    using Error::Error;
};

} // namespace hopps

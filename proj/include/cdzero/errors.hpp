#pragma once

#include <stdexcept>
#include <string>

namespace cdzero {

/// Malformed element text or JSON input.
class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two operands live in different algebras A_n.
class LevelMismatchError : public std::invalid_argument {
public:
    explicit LevelMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation that requires a doubly pure element received something else.
class NotDoublyPureError : public std::invalid_argument {
public:
    explicit NotDoublyPureError(const std::string& what) : std::invalid_argument(what) {}
};

/// Any other violated precondition (zero input, wrong level range, bad scale...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical diagnostics that indicate the computation cannot be trusted,
/// e.g. an eigenvalue clustering that never stabilises mod 4.
class DiagnosticError : public std::runtime_error {
public:
    explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cdzero

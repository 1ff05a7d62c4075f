#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expstar {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in rings with different variable counts, or an index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A constant-term precondition of an analytic function was violated.
class AnalyticDomainError : public Error {
 public:
  using Error::Error;
};

/// Substitution of a series with nonzero constant term into an infinite-support series.
class CompositionDivergenceError : public Error {
 public:
  using Error::Error;
};

/// The requested order exceeds what the inputs can certify.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Formal inversion requested for a map whose linear part is not the identity.
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

/// Floating-point result would be dominated by series truncation or a branch cut.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the mathematical domain of an operation (e.g. a non-positive radius).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input text does not conform to the expression or spec-file grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::string expected = {})
      : Error(format(message, offset, expected)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, std::size_t offset,
                            const std::string& expected) {
    std::string out = message + " at offset " + std::to_string(offset);
    if (!expected.empty()) out += " (expected " + expected + ")";
    return out;
  }

  std::size_t offset_;
  std::string expected_;
};

/// Realization data that parses but violates a mathematical requirement
/// (identity at the origin, antisymmetry, Jacobi).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace expstar

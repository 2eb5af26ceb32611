#pragma once

#include <stdexcept>
#include <string>

namespace metab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different variable counts, ranks or generator sets.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON documents, words, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured search budget ran out before a conclusion was reached.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace metab

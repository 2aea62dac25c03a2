#pragma once

#include <stdexcept>
#include <string>

namespace intrec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A formulation needs finite bounds that the constraint set does not carry.
class MissingBounds : public Error {
 public:
  using Error::Error;
};

/// An integral variable without finite bounds was handed to branch-and-bound.
class UnboundedIntegral : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The right-hand side has no representation in the requested set.
class NotInRange : public Error {
 public:
  using Error::Error;
};

/// The requested method does not apply to the given constraint set.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace intrec

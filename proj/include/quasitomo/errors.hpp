#pragma once

#include <stdexcept>
#include <string>

namespace quasitomo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in cyclotomic fields of different order.
class OrderMismatch : public Error {
 public:
  OrderMismatch(int a, int b)
      : Error("order mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// An argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A valuation of zero was requested (the value would be +infinity).
class InfiniteValuation : public Error {
 public:
  InfiniteValuation() : Error("valuation of zero is infinite") {}
};

/// Two directions that were required to be non-parallel are parallel.
class ParallelDirections : public Error {
 public:
  using Error::Error;
};

/// A lattice point's star image fell into the window guard band.
class NonGenericConfiguration : public Error {
 public:
  using Error::Error;
};

/// A bounded search exhausted its search space.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates an arithmetic bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace quasitomo

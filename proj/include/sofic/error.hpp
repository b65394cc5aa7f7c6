#pragma once

#include <stdexcept>
#include <string>

namespace sofic {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input (JSON, word strings, permutation arrays).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its contract (dimension mismatch,
// non-invariant cut set, H not a subgroup, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A size cap or enumeration budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace sofic

#pragma once

#include <stdexcept>
#include <string>

namespace amv {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in different lattices, or a vector has the wrong rank.
class LatticeMismatch : public Error {
 public:
  using Error::Error;
};

// Checked 64-bit arithmetic overflowed.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Input violates an operation's precondition (bad label, odd square, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed: two independent routes disagree, or a
// computed object violates an invariant it must satisfy.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace amv

#pragma once

#include <stdexcept>
#include <string>

namespace ccx {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown letters, bad exponent syntax, wrong vector arity.
class InputError : public Error {
 public:
  using Error::Error;
};

// Instance-spec file problems; carries a line number in the message.
class SpecParseError : public Error {
 public:
  using Error::Error;
};

// A documented resource bound was exceeded; the message names the bound.
class SizeError : public Error {
 public:
  using Error::Error;
};

// An operation's stated precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Operation asked of a group family that does not support it.
class UnsupportedFamilyError : public Error {
 public:
  using Error::Error;
};

// Two objects live over different ambient groups.
class AmbientMismatchError : public Error {
 public:
  using Error::Error;
};

// A truncated computation could not reach a definite verdict.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccx

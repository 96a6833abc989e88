#pragma once

#include <stdexcept>
#include <string>

namespace kiselman {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Letter out of range, unparsable text, bad probability vector, ...
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class RankMismatch : public Error {
 public:
  RankMismatch(unsigned lhs, unsigned rhs)
      : Error("rank mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

class InvalidEndomorphism : public Error {
 public:
  using Error::Error;
};

// A caller-supplied precondition that the data itself violates (for example
// an incomplete universe passed to ball()).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// Word budget, element cap or per-trial step budget exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The congruence oracle gave different partitions for two slack values.
class OracleUnstable : public Error {
 public:
  using Error::Error;
};

}  // namespace kiselman

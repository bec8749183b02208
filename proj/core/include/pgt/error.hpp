#pragma once

#include <stdexcept>
#include <string>

namespace pgt {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition or type invariant was violated by the caller's data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A rational pole term was evaluated on its pole divisor.
class PoleHit : public Error {
 public:
  using Error::Error;
};

// A result would rest on data whose completeness or correctness is not certified.
class NotCertified : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not reach the requested accuracy.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pgt

#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

// Base class for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller handed us something malformed (bad symbol, window, budget...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The input is well formed but outside the regime an operation is defined on
// (e.g. a non-primitive substitution passed to a language computation).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace symdyn

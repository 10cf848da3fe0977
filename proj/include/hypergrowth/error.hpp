#pragma once

#include <stdexcept>
#include <string>

namespace hypergrowth {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (CSV rows, duplicate years, empty series).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside a model's domain, e.g. at or beyond a finite-time singularity.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A regression that cannot be solved (too few points, singular design).
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypergrowth

#pragma once

#include <stdexcept>
#include <string>

namespace convpow {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied arguments outside an operation's domain, or a file that
/// does not parse. The CLI maps this to exit code 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Round-off exhausted the double-precision budget of a convolution power.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A diagnostic whose preconditions do not hold for the given measure
/// (e.g. angular ratio of a measure with |theta| == 1 everywhere).
class DiagnosticRefused : public Error {
 public:
  using Error::Error;
};

/// A numerically certified hypothesis turned out false (e.g. k* <= 0).
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

/// A bound fit whose regime contains no tuples of the table.
class EmptyRegime : public Error {
 public:
  using Error::Error;
};

}  // namespace convpow

#pragma once

#include <stdexcept>
#include <string>

namespace pixel {

/// Base class for every error raised by the library. Messages are meant to be
/// shown to a user as-is.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or storage cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The operation needs an exact piecewise form that the input does not have
/// (e.g. mu_exact on the threshold generator).
class NotPiecewise : public Error {
 public:
  using Error::Error;
};

/// A bound recursion produced a value beyond the configured bit budget.
class BoundOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace pixel

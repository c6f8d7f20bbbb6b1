#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's precondition (NaN, negative duration,
/// malformed plan, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The point lies in (or flowed into) the hull and has no image under the
/// downward map.
class SwallowedPoint : public Error {
 public:
  using Error::Error;
};

/// Capacity probe is too close to the hull for the expansion at infinity to
/// be meaningful.
class ProbeTooClose : public Error {
 public:
  using Error::Error;
};

class ThetaOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The trace was not produced by the two-driver (-1, +1), equal-weight
/// configuration whose exact hull is known.
class NotKnkInstance : public Error {
 public:
  using Error::Error;
};

}  // namespace loewner

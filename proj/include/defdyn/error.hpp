#pragma once

#include <stdexcept>
#include <string>

namespace defdyn {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Operands belong to different group backends.
  class ContextMismatch : public Error {
   public:
    using Error::Error;
  };

  // A set's period does not divide a point's level, or a restriction target
  // is not a divisor.
  class LevelError : public Error {
   public:
    using Error::Error;
  };

  // A requested construction needs a finer truncation level than the one
  // supplied (the limit along a witness sequence does not stabilize).
  class LevelTooCoarse : public Error {
   public:
    explicit LevelTooCoarse(std::string const& what)
        : Error("level too coarse: " + what) {}
  };

  // An lcm or window size exceeded the configured guard.
  class GuardExceeded : public Error {
   public:
    using Error::Error;
  };

  class InvalidGroup : public Error {
   public:
    using Error::Error;
  };

  class InvalidFlow : public Error {
   public:
    using Error::Error;
  };

  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  // Raised for operations that are not defined on a given backend.
  class Unsupported : public Error {
   public:
    using Error::Error;
  };

}  // namespace defdyn

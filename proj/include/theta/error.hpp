#pragma once

#include <stdexcept>
#include <string>

namespace theta {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Bad JSON, bad shape syntax, arity mismatches in user-supplied data.
  class MalformedInput : public Error {
   public:
    using Error::Error;
  };

  class SiteMismatch : public Error {
   public:
    using Error::Error;
  };

  // Raised when a computation needs an object outside the window it was
  // given, or a presheaf without bounded support is asked for a presentation.
  class WindowTooSmall : public Error {
   public:
    using Error::Error;
  };

  // A precondition of a mathematical construction does not hold
  // (e.g. strictify on a non-strict object).
  class PreconditionFailed : public Error {
   public:
    using Error::Error;
  };

}  // namespace theta

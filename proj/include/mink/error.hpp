#pragma once

#include <stdexcept>

namespace mink {

// Shared error taxonomy. The CLI maps InternalError to exit code 1 and every
// other Error (bad inputs, violated preconditions) to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};
struct InvalidBody : Error {
  using Error::Error;
};
struct NotOnBoundary : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};
struct NoCrossing : Error {
  using Error::Error;
};
struct UnfoldUnsupported : Error {
  using Error::Error;
};
struct InternalError : Error {
  using Error::Error;
};

}  // namespace mink

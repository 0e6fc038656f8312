#pragma once

#include <stdexcept>
#include <string>

namespace gbe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct NotImplementedError : Error {
  using Error::Error;
};

// ₀𝓕₀ came out non-positive (or non-finite) at a real point.
struct PositivityError : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

}  // namespace gbe

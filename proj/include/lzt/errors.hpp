#pragma once

#include <stdexcept>
#include <string>

namespace lzt {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidParams final : Error {
  using Error::Error;
};

/// Integrator could not keep |norm^2 - 1| within the configured bound.
struct NormDriftExceeded final : Error {
  using Error::Error;
};

/// Doubling the integration window changed the final probability too much.
struct WindowNotConverged final : Error {
  using Error::Error;
};

struct StepUnderflow final : Error {
  using Error::Error;
};

/// Window start is too close to the crossing to represent the asymptotic
/// initial condition.
struct WindowTooSmall final : Error {
  using Error::Error;
};

struct TailNotSettled final : Error {
  using Error::Error;
};

struct NoCrossing final : Error {
  using Error::Error;
};

struct DegenerateS1 final : Error {
  using Error::Error;
};

struct ZeroSlope final : Error {
  using Error::Error;
};

}  // namespace lzt

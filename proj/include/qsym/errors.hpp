#ifndef QSYM_ERRORS_HPP
#define QSYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsym {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured size cap (points, tensor dimension, group order) was exceeded.
struct SizeLimitError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

/// Input violates a documented precondition (non-projective partition,
/// N below the supported range, invalid subset, ...).
struct PreconditionError : Error {
  using Error::Error;
};

/// A matrix model or action failed a structural check it was required to pass.
struct ModelError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace qsym

#endif

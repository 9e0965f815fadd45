#ifndef LITMUS_ERRORS_HPP
#define LITMUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace litmus {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A domain type or FunctionSpec failed validation.
struct InvalidSpec : Error {
  using Error::Error;
};

// Bad or inconsistent configuration / input files.
struct ConfigError : Error {
  using Error::Error;
};

// A regression fit has no information to work with (all x equal, empty data).
struct DegenerateFit : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// A built calibration table violates its monotonicity contract.
struct NonMonotoneTable : Error {
  using Error::Error;
};

// Internal arithmetic impossibility (e.g. congested slice 0 with solo > 0).
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace litmus

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace apf {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration, bad dimensions, non-finite data. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A stabilizability hypothesis fails (uncontrollable pair, closed loop not
/// Hurwitz, indefinite Q). CLI exit code 3.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Query outside the domain an object is defined on. CLI exit code 4.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Runtime failure while integrating a closed loop. CLI exit code 4.
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace apf

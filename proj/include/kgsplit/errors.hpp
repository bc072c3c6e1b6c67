#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kgsplit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (wrong representation,
/// mismatched grids, complex data where real data is required, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A negative power of the bracket was requested at m = 0 on a field with
/// a nonzero zero mode under the strict zero-mode policy.
class SingularOperator : public Error {
 public:
  using Error::Error;
};

/// Invalid or unusable study configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared while time stepping.
class BlowUp : public Error {
 public:
  BlowUp(std::int64_t step, const std::string& what)
      : Error(what), step_(step) {}

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

}  // namespace kgsplit

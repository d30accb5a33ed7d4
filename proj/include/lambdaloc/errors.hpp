#pragma once

#include <stdexcept>
#include <string>

namespace lambdaloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian has more than one stationary state.
class SingularSteadyState : public Error {
 public:
  using Error::Error;
};

/// Time evolution did not settle before the configured horizon.
class NotConverged : public Error {
 public:
  using Error::Error;
};

class StepSizeUnderflow : public Error {
 public:
  using Error::Error;
};

/// A density matrix left the physical set (trace, hermiticity, positivity).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NoPeak : public Error {
 public:
  using Error::Error;
};

class OneSidedPeak : public Error {
 public:
  using Error::Error;
};

/// Zero temperature makes the steady-time budget unbounded.
class InfiniteBudget : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lambdaloc

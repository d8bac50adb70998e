#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Inputs that disagree about dimension, convention or suite configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operator polynomial does not have the shape an extractor expects.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical integration produced a non-finite state.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace forge

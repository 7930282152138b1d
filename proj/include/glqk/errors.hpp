#pragma once

#include <stdexcept>
#include <string>

namespace glqk {

// Error categories map onto the CLI exit codes (2, 3, 4).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cluster string that no local subsystem can contain.
class LocalityViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A metric that is undefined for its input (e.g. R^2 on constant labels).
class UndefinedMetric : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace glqk

#pragma once

#include <stdexcept>

namespace magshift {

// A physically or numerically invalid input: model parameters out of range,
// an evaluation requested on a path where it is not defined, etc.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An integration engine exhausted its subdivision or extrapolation budget
// without meeting the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace magshift

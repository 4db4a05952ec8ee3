#pragma once

#include <stdexcept>
#include <string>

namespace lorentz {

// Shapes or lengths that do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition on values (not shapes) was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating-point machinery failed: eigensolver non-convergence, NaN, overflow.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The problem is well-formed but has no solution: inconsistent linear
// system, empty feasible region, non-hyperbolic input where one is needed.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lorentz

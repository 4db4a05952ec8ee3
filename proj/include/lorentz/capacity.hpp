#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lorentz/hyperbolic.hpp"
#include "lorentz/poly.hpp"

namespace lorentz {

struct CapacityConfig {
  std::size_t starts = 16;
  int max_iter = 500;
  double tol = 1e-10;  // relative objective change that ends a start
  std::uint64_t seed = 0;
};

/// Best point found for inf f(x)/x^α over x > 0 (and x ∈ K when a cone is
/// given). Local descent only, so `value` is an upper bound on the infimum.
struct CapacityResult {
  double value = 0.0;
  double log_value = 0.0;
  std::vector<double> argmin;
  int iterations = 0;
  std::size_t starts = 0;
  bool converged = false;
  bool feasible = false;
  bool upper_bound = true;
};

/// Minimizes g(y) = log f(eʸ) − ⟨α, y⟩ by multi-start gradient descent with
/// Armijo backtracking that rejects infeasible steps. When f is homogeneous
/// and Σα = deg f, gradients are projected onto Σy = 0. Returns feasible =
/// false when no feasible start exists; throws NumericalError if every
/// feasible start breaks down numerically.
CapacityResult capacity_estimate(const MultiPoly<double>& f, std::span<const double> alpha,
                                 const ConeSpec* cone = nullptr, const CapacityConfig& config = {});

struct CapacityAudit {
  double f_at_ones = 0.0;
  double f_mu = 0.0;
  CapacityResult capacity;
  bool holds = false;
  std::vector<std::string> violations;
};

/// Checks f(𝟙) >= Cap_μ(f) >= f_μ − tol for f with nonnegative coefficients
/// and μ ∈ supp f.
CapacityAudit capacity_bounds_audit(const MultiPoly<double>& f, std::span<const int> mu,
                                    const CapacityConfig& config = {}, double tol = 1e-6);

}  // namespace lorentz

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lorentz/matrix.hpp"
#include "lorentz/poly.hpp"

namespace lorentz {

/// Inertia (n₊, n₀, n₋) of a symmetric matrix with the zero band used.
struct SignatureReport {
  std::size_t n_pos = 0;
  std::size_t n_zero = 0;
  std::size_t n_neg = 0;
  std::vector<double> eigenvalues;  // ascending
  double tolerance = 0.0;

  friend bool operator==(const SignatureReport&, const SignatureReport&) = default;
};

enum class LorentzClass {
  NegativeSemidefinite,
  LorentzianStrict,
  Lorentzian,
  NotLorentzian,
};

std::string_view to_string(LorentzClass c);
LorentzClass lorentz_class_from_string(std::string_view s);

/// Default zero band: 1e-9 * max(1, ‖Q‖_F).
double default_zero_band(const Matrix<double>& q);

SignatureReport eigen_signature(const SymMatrix<double>& q, std::optional<double> tol = std::nullopt);

inline SignatureReport eigen_signature(const SymMatrix<Rational>& q,
                                       std::optional<double> tol = std::nullopt) {
  return eigen_signature(q.cast<double>(), tol);
}

LorentzClass lorentz_class(const SignatureReport& s);
LorentzClass lorentz_class(const SymMatrix<double>& q, std::optional<double> tol = std::nullopt);

/// (aᵀQa)·Q − t·(Qa)(Qa)ᵀ.
SymMatrix<double> deflated_matrix(const SymMatrix<double>& q, std::span<const double> a, double t);

/// True iff the deflated matrix has no eigenvalue above its zero band.
/// Requires aᵀQa > 0 and t >= 1.
bool deflation_check(const SymMatrix<double>& q, std::span<const double> a, double t,
                     std::optional<double> tol = std::nullopt);

/// Q restricted to an orthonormal basis of (Qa)^⊥, as an (n-1)x(n-1) matrix.
SymMatrix<double> restrict_to_complement(const SymMatrix<double>& q, std::span<const double> a);

/// True iff x ↦ xᵀQx is negative definite on (Qa)^⊥.
bool negative_definite_on_complement(const SymMatrix<double>& q, std::span<const double> a,
                                     std::optional<double> tol = std::nullopt);

// c-Rayleigh inequality ∂^α f · ∂^{α+e_i+e_j} f <= c · ∂^{α+e_i} f · ∂^{α+e_j} f.
enum class RayleighScan {
  // α ∈ {0,1}^n, i < j outside supp α: the multi-affine reading.
  MultiAffine,
  // every α with |α| <= d-2 and every pair i <= j.
  Full,
};

struct RayleighViolation {
  std::size_t point_index = 0;
  Exponents alpha;
  std::size_t i = 0;
  std::size_t j = 0;
  double lhs = 0.0;  // ∂^α f · ∂^{α+e_i+e_j} f
  double rhs = 0.0;  // ∂^{α+e_i} f · ∂^{α+e_j} f (before multiplying by c)
};

inline constexpr double kRayleighSlack = 1e-9;

/// Sample-based scan: the inequality is only checked at the supplied points.
/// c = +inf never reports a violation.
std::vector<RayleighViolation> rayleigh_check(const MultiPoly<double>& f, double c,
                                              std::span<const std::vector<double>> points,
                                              RayleighScan scan = RayleighScan::MultiAffine);

/// Largest lhs/rhs over tuples with rhs > 0 at the given points; also
/// returns the tuple attaining it. Useful to locate the critical c.
struct RayleighRatio {
  double ratio = 0.0;
  RayleighViolation witness;
};
RayleighRatio max_rayleigh_ratio(const MultiPoly<double>& f, std::span<const std::vector<double>> points,
                                 RayleighScan scan = RayleighScan::MultiAffine);

}  // namespace lorentz

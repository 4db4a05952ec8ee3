#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/matrix.hpp"
#include "lorentz/scalar.hpp"

namespace lorentz {

/// G(n,k) = k/(k−1)·I − 1/(k−1)·𝟙𝟙ᵀ: unit diagonal, off-diagonal −1/(k−1).
SymMatrix<Rational> gnk(int n, int k);

/// per(G(n,k)) = (k/(k−1))ⁿ Σ_{i=0}^{n} (−1/k)^i n!/(n−i)!, exactly.
Rational gnk_per_closed_form(int n, int k);

struct PositivityVerdict {
  bool guaranteed_positive = false;
  std::string reason;
};

/// Sufficient condition for per > 0 on every NLS matrix of type (n,k):
/// (4,2); even n with n−1 > k > 2; odd n with n−1 > k > √(2(n−1)).
/// A negative verdict says nothing about the sign.
PositivityVerdict nls_positivity_predicate(int n, int k);

/// {1 + ⌊√(2(n−1))⌋, ..., n−1}; throws DomainError when empty.
std::vector<int> nested_k_range(int n);

struct NestedCheck {
  std::vector<int> ks;
  std::vector<Rational> values;
  bool decreasing = false;      // strictly, along ks
  bool below_g42 = false;       // every value < per(G(4,2)) = 8
  bool holds = false;
};

NestedCheck gnk_nested_report(int n);
bool gnk_nested_check(int n);

struct NormalizedGnk {
  Matrix<Rational> matrix;  // G(n,k)/n, trace 1
  Rational per;
};

NormalizedGnk gnk_normalized(int n, int k);

/// c_ii = −1 for n−m < i <= n (1-based), every other entry 1.
Matrix<Rational> cnm(int n, int m);

inline constexpr std::size_t kLocalPsdCap = 16;

/// Every k×k principal submatrix is PSD. Exact mode tests the signs of the
/// characteristic-polynomial coefficients; float mode uses eigenvalues with
/// the zero band tol (default 1e−9·max(1, ‖sub‖_F)).
template <class T>
bool is_k_locally_psd(const SymMatrix<T>& m, int k, std::optional<double> tol = std::nullopt);

/// k-locally PSD, every k×k principal submatrix singular, and M nonsingular.
template <class T>
bool is_nls(const SymMatrix<T>& m, int k, std::optional<double> tol = std::nullopt);

/// Coefficients e_0..e_n of det(λI + A) = Σ e_j λ^{n−j}, i.e. the elementary
/// symmetric functions of the eigenvalues (Faddeev–LeVerrier).
std::vector<Rational> eigen_elementary_symmetric(const Matrix<Rational>& a);

}  // namespace lorentz

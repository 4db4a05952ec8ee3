#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "lorentz/matrix.hpp"
#include "lorentz/mixeddisc.hpp"
#include "lorentz/poly.hpp"

namespace lorentz {

inline constexpr std::size_t kNaivePermanentCap = 8;
inline constexpr std::size_t kRyserCap = 40;

/// Ryser inclusion-exclusion with Gray-code row-sum updates. Rational input
/// is cleared of denominators row by row and summed in exact integers.
double permanent_ryser(const Matrix<double>& a);
Rational permanent_ryser(const Matrix<Rational>& a);

/// Direct n! summation (n <= 8); the ground-truth oracle.
template <class T>
T permanent_naive(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("permanent of non-square matrix");
  const std::size_t n = a.rows();
  if (n > kNaivePermanentCap) throw DomainError("permanent_naive: size cap (8) exceeded");
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  T sum(0);
  do {
    T prod(1);
    for (std::size_t i = 0; i < n; ++i) prod *= a(i, sigma[i]);
    sum += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return sum;
}

/// f_A(x) = Π_j (Σ_i a_ij x_i).
template <class T>
MultiPoly<T> generating_polynomial(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("generating_polynomial: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) throw DimensionError("generating_polynomial: empty matrix");
  MultiPoly<T> f = MultiPoly<T>::constant(n, T(1));
  for (std::size_t j = 0; j < n; ++j) f = f * MultiPoly<T>::linear_form(a.column(j));
  return f;
}

/// Π_k ∂_{x_k}|_{x_k = 0} applied to f_A (n <= 8).
template <class T>
T permanent_via_derivatives(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("permanent of non-square matrix");
  if (a.rows() > kNaivePermanentCap) throw DomainError("permanent_via_derivatives: size cap (8) exceeded");
  MultiPoly<T> g = generating_polynomial(a);
  for (std::size_t k = 0; k < a.rows(); ++k) g = substitute_zero(derivative(g, k), k);
  return g.coefficient(Exponents(a.rows(), 0));
}

template <class T>
struct CongruenceReport {
  T per_a;
  T per_dad;
  T det_d_squared;
  bool holds = false;
};

/// per(DAD) = det(D)² per(A) for diagonal D = diag(d).
template <class T>
CongruenceReport<T> diagonal_congruence_per(const Matrix<T>& a, const std::vector<T>& d) {
  if (!a.is_square() || d.size() != a.rows()) throw DimensionError("diagonal_congruence_per: size mismatch");
  for (const auto& v : d)
    if (v == T(0)) throw DomainError("diagonal_congruence_per: zero diagonal entry");
  const Matrix<T> dm = Matrix<T>::diagonal(d);
  CongruenceReport<T> r;
  r.per_a = permanent_ryser(a);
  r.per_dad = permanent_ryser(dm * a * dm);
  T det(1);
  for (const auto& v : d) det *= v;
  r.det_d_squared = det * det;
  r.holds = nearly_equal(r.per_dad, r.det_d_squared * r.per_a);
  return r;
}

template <class T>
struct PerstableReport {
  T coefficient;  // x_1...x_n coefficient of det(Σ x_i A_i)
  T expected;     // det(V)² per(A)
  bool holds = false;
};

/// A_i = Σ_j a_ij v_j v_jᵀ with v_j the columns of V (n <= 5, A >= 0).
template <class T>
PerstableReport<T> perstable_coefficient(const Matrix<T>& v, const Matrix<T>& a) {
  if (!v.is_square() || !a.is_square() || v.rows() != a.rows())
    throw DimensionError("perstable_coefficient: V and A must be n×n");
  const std::size_t n = v.rows();
  if (n == 0) throw DimensionError("perstable_coefficient: empty matrix");
  if (n > 5) throw DomainError("perstable_coefficient: size cap (5) exceeded");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) < T(0)) throw DomainError("perstable_coefficient: A must be nonnegative");
  const T det_v = determinant(v);
  bool singular = det_v == T(0);
  if constexpr (!is_exact_v<T>) singular = singular || std::abs(det_v) <= 1e-12 * std::pow(std::max(1.0, frobenius_norm(v)), static_cast<double>(n));
  if (singular) throw DomainError("perstable_coefficient: V is singular");
  std::vector<Matrix<T>> as;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<T> ai(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto col = v.column(j);
      ai = ai + a(i, j) * outer<T>(col, col);
    }
    as.push_back(std::move(ai));
  }
  PerstableReport<T> r;
  r.coefficient = determinantal_polynomial(as, false).coefficient(Exponents(n, 1));
  r.expected = det_v * det_v * permanent_ryser(a);
  if constexpr (is_exact_v<T>) {
    r.holds = r.coefficient == r.expected;
  } else {
    r.holds = nearly_equal(r.coefficient, r.expected, 1e-8);
  }
  return r;
}

/// All-ones matrix (per = n!).
template <class T>
Matrix<T> ones_matrix(std::size_t n) {
  return Matrix<T>(n, n, T(1));
}

/// (1/n)·𝟙𝟙ᵀ, the van der Waerden extremal matrix (per = n!/nⁿ).
template <class T>
Matrix<T> uniform_doubly_stochastic(std::size_t n) {
  if (n == 0) throw DimensionError("uniform_doubly_stochastic: n must be positive");
  return Matrix<T>(n, n, T(1) / T(static_cast<long>(n)));
}

/// Alternating row/column normalization of a positive matrix.
Matrix<double> sinkhorn_normalize(const Matrix<double>& a, int max_iter = 10000, double tol = 1e-13);

}  // namespace lorentz

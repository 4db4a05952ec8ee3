#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lorentz/matrix.hpp"
#include "lorentz/poly.hpp"

namespace lorentz {

inline constexpr std::size_t kMixedDiscCap = 8;
inline constexpr std::size_t kSymbolicDetCap = 6;

template <class T>
struct MixedArgument {
  Matrix<T> matrix;
  int multiplicity = 1;
};

namespace detail {

template <class T>
std::size_t validate_mixed(const std::vector<MixedArgument<T>>& args, std::size_t& total) {
  if (args.empty()) throw DimensionError("mixed discriminant needs at least one matrix");
  const std::size_t n = args.front().matrix.rows();
  total = 0;
  for (const auto& a : args) {
    if (!a.matrix.is_square() || a.matrix.rows() != n) throw DimensionError("mixed discriminant: size mismatch");
    if (a.multiplicity < 0) throw DomainError("mixed discriminant: negative multiplicity");
    total += static_cast<std::size_t>(a.multiplicity);
  }
  if (total > n) throw DomainError("mixed discriminant: total multiplicity exceeds matrix size");
  return n;
}

// Calls visit(subset) for each increasing k-subset of {0..n-1}.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    visit(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// D(A_1^{k_1}, ..., A_m^{k_m}) from the definition: sum over k-subsets α of
/// rows/columns and over distinct arrangements σ of the multiset, of the
/// k×k determinant whose row i is row α_i of A_{σ(i)} restricted to α.
template <class T>
T mixed_discriminant(const std::vector<MixedArgument<T>>& args) {
  std::size_t k = 0;
  const std::size_t n = detail::validate_mixed(args, k);
  if (n > kMixedDiscCap || k > kMixedDiscCap) throw DomainError("mixed discriminant: size cap (8) exceeded");
  if (k == 0) return T(1);
  std::vector<std::size_t> labels;
  for (std::size_t a = 0; a < args.size(); ++a)
    labels.insert(labels.end(), static_cast<std::size_t>(args[a].multiplicity), a);
  T sum(0);
  Matrix<T> block(k, k);
  detail::for_each_subset(n, k, [&](const std::vector<std::size_t>& alpha) {
    std::vector<std::size_t> sigma = labels;
    do {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) block(i, j) = args[sigma[i]].matrix(alpha[i], alpha[j]);
      sum += determinant(block);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  });
  return sum;
}

template <class T>
T mixed_discriminant(const std::vector<Matrix<T>>& matrices) {
  std::vector<MixedArgument<T>> args;
  for (const auto& m : matrices) args.push_back({m, 1});
  return mixed_discriminant(args);
}

/// det(I + Σ x_i A_i) (with_identity) or det(Σ x_i A_i), expanded symbolically
/// by a subset recursion over columns. One variable per matrix.
template <class T>
MultiPoly<T> determinantal_polynomial(const std::vector<Matrix<T>>& matrices, bool with_identity) {
  if (matrices.empty()) throw DimensionError("determinantal_polynomial: no matrices");
  const std::size_t n = matrices.front().rows();
  const std::size_t m = matrices.size();
  for (const auto& a : matrices)
    if (!a.is_square() || a.rows() != n) throw DimensionError("determinantal_polynomial: size mismatch");
  if (n > kSymbolicDetCap) throw DomainError("symbolic determinant: size cap (6) exceeded");
  auto entry = [&](std::size_t i, std::size_t j) {
    std::vector<T> coeffs(m);
    for (std::size_t l = 0; l < m; ++l) coeffs[l] = matrices[l](i, j);
    auto p = MultiPoly<T>::linear_form(coeffs);
    if (with_identity && i == j) p = p + MultiPoly<T>::constant(m, T(1));
    return p;
  };
  std::vector<std::vector<MultiPoly<T>>> cell(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cell[i].push_back(entry(i, j));
  // dp[mask]: sum over assignments of the first popcount(mask) rows to the columns in mask.
  const std::size_t full = (std::size_t{1} << n);
  std::vector<MultiPoly<T>> dp(full, MultiPoly<T>(m));
  dp[0] = MultiPoly<T>::constant(m, T(1));
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (dp[mask].is_zero()) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      if (cell[row][j].is_zero()) continue;
      const bool odd = __builtin_popcountll(mask >> (j + 1)) & 1;
      const MultiPoly<T> term = cell[row][j] * dp[mask];
      auto& target = dp[mask | (std::size_t{1} << j)];
      target = odd ? target - term : target + term;
    }
  }
  return dp[full - 1];
}

/// Mixed discriminant read off as the x^κ coefficient of det(Σ x_i A_i)
/// (k = n) or det(I + Σ x_i A_i) (k < n).
template <class T>
T md_via_coefficients(const std::vector<MixedArgument<T>>& args) {
  std::size_t k = 0;
  const std::size_t n = detail::validate_mixed(args, k);
  if (n > kSymbolicDetCap) throw DomainError("md_via_coefficients: size cap (6) exceeded");
  std::vector<Matrix<T>> matrices;
  Exponents kappa;
  for (const auto& a : args) {
    matrices.push_back(a.matrix);
    kappa.push_back(a.multiplicity);
  }
  return determinantal_polynomial(matrices, k < n).coefficient(kappa);
}

template <class T>
struct DetSumTerm {
  std::vector<int> multiplicities;
  T value;
};

template <class T>
struct DetSumExpansion {
  T direct;
  T expanded;
  std::vector<DetSumTerm<T>> terms;
  bool agree = false;
};

/// det(Σ A_i) directly and as Σ_κ D(A_1^{κ_1}, ..., A_m^{κ_m}) over |κ| = n.
template <class T>
DetSumExpansion<T> det_of_sum_expansion(const std::vector<Matrix<T>>& matrices) {
  if (matrices.empty()) throw DimensionError("det_of_sum_expansion: no matrices");
  const std::size_t n = matrices.front().rows();
  Matrix<T> sum(n, n);
  for (const auto& a : matrices) {
    if (!a.is_square() || a.rows() != n) throw DimensionError("det_of_sum_expansion: size mismatch");
    sum = sum + a;
  }
  DetSumExpansion<T> out;
  out.direct = determinant(sum);
  out.expanded = T(0);
  const std::size_t m = matrices.size();
  std::vector<int> kappa(m, 0);
  // Enumerate compositions of n into m nonnegative parts.
  auto recurse = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == m) {
      kappa[pos] = left;
      std::vector<MixedArgument<T>> args;
      for (std::size_t i = 0; i < m; ++i)
        if (kappa[i] > 0) args.push_back({matrices[i], kappa[i]});
      const T v = mixed_discriminant(args);
      out.expanded += v;
      out.terms.push_back({kappa, v});
      return;
    }
    for (int c = left; c >= 0; --c) {
      kappa[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  recurse(recurse, 0, static_cast<int>(n));
  out.agree = nearly_equal(out.direct, out.expanded);
  return out;
}

template <class T>
struct RankOneUpdate {
  T lhs;        // det(A + u vᵀ)
  T rhs;        // (1 + vᵀ A⁻¹ u) det A
  T via_mixed;  // D(A^n) + D(A^{n-1}, u vᵀ)
  bool agree = false;
};

template <class T>
RankOneUpdate<T> rank_one_update_det(const Matrix<T>& a, const std::vector<T>& u, const std::vector<T>& v) {
  if (!a.is_square()) throw DimensionError("rank_one_update_det: A must be square");
  const std::size_t n = a.rows();
  if (u.size() != n || v.size() != n) throw DimensionError("rank_one_update_det: vector length mismatch");
  const T det_a = determinant(a);
  if (det_a == T(0)) throw DomainError("rank_one_update_det: A is singular");
  const Matrix<T> ainv = inverse(a);
  const Matrix<T> uv = outer<T>(u, v);
  RankOneUpdate<T> r;
  r.lhs = determinant(a + uv);
  r.rhs = (T(1) + dot<T>(v, ainv * std::span<const T>(u))) * det_a;
  if (n == 0) {
    r.via_mixed = T(1);
  } else {
    r.via_mixed = mixed_discriminant<T>({{a, static_cast<int>(n)}}) +
                  mixed_discriminant<T>({{a, static_cast<int>(n) - 1}, {uv, 1}});
  }
  r.agree = nearly_equal(r.lhs, r.rhs) && nearly_equal(r.lhs, r.via_mixed);
  return r;
}

template <class T>
struct ScalingIdentity {
  T lhs;  // D(α_1 X A_1 Y, ..., α_n X A_n Y)
  T rhs;  // det X det Y Π α_i D(A_1, ..., A_n)
  bool holds = false;
};

template <class T>
ScalingIdentity<T> scaling_identity_check(const Matrix<T>& x, const Matrix<T>& y, const std::vector<Matrix<T>>& as,
                                          const std::vector<T>& alphas) {
  const std::size_t n = x.rows();
  if (!x.is_square() || !y.is_square() || y.rows() != n) throw DimensionError("scaling identity: X, Y must be n×n");
  if (as.size() != n || alphas.size() != n) throw DimensionError("scaling identity: need n matrices and n scalars");
  std::vector<Matrix<T>> scaled;
  T prod(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!as[i].is_square() || as[i].rows() != n) throw DimensionError("scaling identity: size mismatch");
    scaled.push_back(alphas[i] * (x * as[i] * y));
    prod *= alphas[i];
  }
  ScalingIdentity<T> r;
  r.lhs = mixed_discriminant(scaled);
  r.rhs = determinant(x) * determinant(y) * prod * mixed_discriminant(as);
  r.holds = nearly_equal(r.lhs, r.rhs);
  return r;
}

}  // namespace lorentz

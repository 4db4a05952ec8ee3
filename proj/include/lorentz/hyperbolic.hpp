#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "lorentz/matrix.hpp"
#include "lorentz/poly.hpp"

namespace lorentz {

/// Threshold on max |Im r| / (1 + |r|) below which roots count as real.
inline constexpr double kRootTolerance = 1e-8;

struct RootProfile {
  std::vector<std::complex<double>> roots;  // sorted by real part
  double max_imag_ratio = 0.0;
  bool all_real = true;
  bool all_negative = true;  // meaningful only when all_real
};

/// Roots of Σ coeffs[k] t^k via a balanced companion matrix. Clusters that
/// are numerically indistinguishable from a repeated root are collapsed to
/// their centroid before the realness test.
RootProfile real_root_profile(std::span<const double> coeffs);

struct HyperbolicityCertificate {
  bool hyperbolic = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_imag_ratio = 0.0;
  std::vector<double> witness;  // first x whose line restriction is not real-rooted
};

/// Monte-Carlo check that t ↦ f(x + t e) is real-rooted for Gaussian x.
/// A `true` is a probabilistic certificate, not a proof.
HyperbolicityCertificate hyperbolicity_certificate(const MultiPoly<double>& f, std::span<const double> e,
                                                   std::size_t n_samples = 256, std::uint64_t seed = 0);

bool is_hyperbolic(const MultiPoly<double>& f, std::span<const double> e, std::size_t n_samples = 256,
                   std::uint64_t seed = 0);

enum class ConeClosure { Open, Closed };

/// x ∈ Λ₊₊(f, e) (open) or its closure: all roots of t ↦ f(x + t e) are
/// real and negative (resp. nonpositive) within kRootTolerance.
bool cone_membership(const MultiPoly<double>& f, std::span<const double> e, std::span<const double> x,
                     ConeClosure closure = ConeClosure::Open);

/// e with Aᵀe = 𝟙, so that Σ e_i A_i = I for the diagonal coefficient
/// matrices A_i = diag(row i of A). Throws InfeasibleError when 𝟙 ∉ range(Aᵀ).
template <class T>
std::vector<T> direction_for_matrix(const Matrix<T>& a);

/// f + s · x_i · ∂_j f.
template <class T>
MultiPoly<T> nuij_step(const MultiPoly<T>& f, std::size_t i, std::size_t j, const T& s) {
  if (i >= f.nvars() || j >= f.nvars()) throw DimensionError("nuij_step: index out of range");
  if (i == j) throw DomainError("nuij_step requires i != j");
  return f + s * (MultiPoly<T>::variable(f.nvars(), i) * derivative(f, j));
}

/// Nuij perturbation along a cone direction e: applies T_i = 1 + s·ℓ_i(x)·D_e
/// d times for each i ≠ p, with ℓ_i(x) = x_i − (e_i/e_p)·x_p and p the index
/// of the largest |e_p|. For e = e_j this is ∏_{i≠j} (1 + s x_i ∂_j)^d.
template <class T>
MultiPoly<T> nuij_approx(const MultiPoly<T>& f, std::span<const T> e, const T& s) {
  detail::require_length(f, e.size(), "nuij_approx");
  const std::size_t n = f.nvars();
  std::size_t p = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (abs_value(e[i]) > abs_value(e[p])) p = i;
  if (e[p] == T(0)) throw DomainError("nuij_approx: zero direction");
  if (s == T(0) || f.is_zero()) return f;
  const int d = f.degree();
  MultiPoly<T> g = f;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p) continue;
    std::vector<T> coeffs(n, T(0));
    coeffs[i] = T(1);
    coeffs[p] = -e[i] / e[p];
    const MultiPoly<T> ell = MultiPoly<T>::linear_form(coeffs);
    for (int r = 0; r < d; ++r) g = g + s * (ell * directional_derivative(g, e));
  }
  return g;
}

template <class T>
MultiPoly<T> nuij_approx(const MultiPoly<T>& f, std::size_t j, const T& s) {
  if (j >= f.nvars()) throw DimensionError("nuij_approx: index out of range");
  std::vector<T> e(f.nvars(), T(0));
  e[j] = T(1);
  return nuij_approx(f, std::span<const T>(e), s);
}

/// g interlaces f: deg g = deg f − 1, both real-rooted, α_i <= β_i <= α_{i+1}.
bool interlaces(std::span<const double> g, std::span<const double> f);

/// Samples points of Λ₊₊(f, e) and checks they lie in the closed cones of
/// D_e^{(m)} f for m = 1..k. Requires 1 <= k < deg f.
bool relaxation_inclusion_check(const MultiPoly<double>& f, std::span<const double> e, int k,
                                std::size_t n_samples = 256, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Cones

struct OrthantCone {
  std::size_t dim = 0;
};

struct GeneratedCone {
  std::vector<std::vector<double>> generators;
};

struct HyperbolicityCone {
  MultiPoly<double> poly;
  std::vector<double> direction;
};

/// A closed convex cone K: the nonnegative orthant, the conic hull of
/// generators, or the hyperbolicity cone Λ₊₊(f, e).
class ConeSpec {
 public:
  using Variant = std::variant<OrthantCone, GeneratedCone, HyperbolicityCone>;

  static ConeSpec orthant(std::size_t n, std::uint64_t seed = 0);
  static ConeSpec generated(std::vector<std::vector<double>> generators, std::uint64_t seed = 0);
  /// Validates f(e) > 0 and a sampled hyperbolicity check.
  static ConeSpec hyperbolicity(MultiPoly<double> f, std::vector<double> e, std::uint64_t seed = 0,
                                std::size_t check_samples = 64);

  std::size_t dim() const;
  const Variant& variant() const { return variant_; }
  std::uint64_t seed() const { return seed_; }
  const char* kind() const;

  /// Interior membership (open cone).
  bool contains(std::span<const double> x) const;

  std::vector<std::vector<double>> sample_interior(std::size_t count, Rng& rng) const;
  std::vector<std::vector<double>> sample_interior(std::size_t count) const;

 private:
  ConeSpec(Variant v, std::uint64_t seed) : variant_(std::move(v)), seed_(seed) {}
  Variant variant_;
  std::uint64_t seed_ = 0;
};

/// Nonnegative least squares min ‖Gλ − x‖ over λ >= 0 (Lawson–Hanson);
/// G holds the generators as columns. Returns the residual norm.
double nnls_residual(const std::vector<std::vector<double>>& generators, std::span<const double> x,
                     std::vector<double>* weights = nullptr);

}  // namespace lorentz

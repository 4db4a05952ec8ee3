#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lorentz/hyperbolic.hpp"
#include "lorentz/poly.hpp"
#include "lorentz/spectra.hpp"

namespace lorentz {

/// H_f(a) has at most one positive eigenvalue. Degree <= 1 is log-concave by convention.
bool is_log_concave_at(const MultiPoly<double>& f, std::span<const double> a);

/// Strict log-concavity at a together with the two equivalent quadratic-form tests.
struct StrictLogConcavity {
  bool strict = false;
  SignatureReport signature;
  // (aᵀQa)Q − (Qa)(Qa)ᵀ is negative semidefinite with a one-dimensional kernel.
  bool deflation_ok = false;
  // Q is negative definite on (Qa)^⊥.
  bool complement_ok = false;
  // strict agrees with both tests (always true when the theory and tolerances line up).
  bool consistent = false;
};

/// Throws DomainError unless f(a) > 0.
StrictLogConcavity strict_log_concavity(const MultiPoly<double>& f, std::span<const double> a);
bool is_strictly_log_concave_at(const MultiPoly<double>& f, std::span<const double> a);

struct ChainWitness {
  std::vector<std::vector<double>> directions;  // a_1, ..., a_d
  SignatureReport signature;                    // Hessian of D_{a3}...D_{ad} f
  LorentzClass cls = LorentzClass::NotLorentzian;
  double contraction = 0.0;                     // D_{a1}...D_{ad} f
};

struct LorentzianReport {
  bool holds = true;
  bool strict = true;
  std::size_t chains = 0;
  std::uint64_t seed = 0;
  bool sign_normalized = false;
  std::size_t not_lorentzian = 0;
  std::size_t nonpositive = 0;
  std::size_t non_strict = 0;
  std::vector<ChainWitness> witnesses;  // failing chains, capped
};

inline constexpr std::size_t kMaxWitnesses = 16;

/// Sampled test of Lorentzian signature over a cone: each chain draws
/// a_1..a_d from int K, classifies the constant Hessian of D_{a3}...D_{ad} f
/// and requires D_{a1}...D_{ad} f > 0. A `holds` is a probabilistic
/// certificate. With normalize_sign, f is replaced by −f when it is negative
/// on the first sampled point of K.
LorentzianReport lorentzian_over_cone(const MultiPoly<double>& f, const ConeSpec& cone, std::size_t n_chains = 64,
                                      std::uint64_t seed = 0, bool normalize_sign = false);

struct KStableReport {
  bool stable = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> witness;  // interior point where hyperbolicity failed
};

/// f is hyperbolic w.r.t. each of n_samples sampled points of int K.
KStableReport k_stable_report(const MultiPoly<double>& f, const ConeSpec& cone, std::size_t n_samples = 32,
                              std::uint64_t seed = 0, std::size_t inner_samples = 64);
bool k_stable_check(const MultiPoly<double>& f, const ConeSpec& cone, std::size_t n_samples = 32,
                    std::uint64_t seed = 0, std::size_t inner_samples = 64);

enum class ExchangeRule {
  // α − e_i + e_j ∈ J
  Basic,
  // additionally β + e_i − e_j ∈ J
  Symmetric,
};

/// Exchange property of supp f: for α, β ∈ J and α_i > β_i there is j with
/// α_j < β_j satisfying the rule. The zero polynomial has empty support (true).
bool m_convex_support(const MultiPoly<double>& f, ExchangeRule rule = ExchangeRule::Basic);
bool m_convex_support(const std::vector<Exponents>& support, ExchangeRule rule = ExchangeRule::Basic);

}  // namespace lorentz

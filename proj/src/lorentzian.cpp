#include "lorentz/lorentzian.hpp"

#include <cmath>
#include <set>

namespace lorentz {

bool is_log_concave_at(const MultiPoly<double>& f, std::span<const double> a) {
  detail::require_length(f, a.size(), "is_log_concave_at");
  if (f.degree() <= 1) return true;
  return lorentz_class(hessian_at(f, a)) != LorentzClass::NotLorentzian;
}

StrictLogConcavity strict_log_concavity(const MultiPoly<double>& f, std::span<const double> a) {
  detail::require_length(f, a.size(), "is_strictly_log_concave_at");
  if (!(evaluate(f, a) > 0.0)) throw DomainError("strict log-concavity requires f(a) > 0");
  StrictLogConcavity r;
  const auto q = hessian_at(f, a);
  r.signature = eigen_signature(q);
  r.strict = lorentz_class(r.signature) == LorentzClass::LorentzianStrict;
  const auto qa = q.matrix() * a;
  if (dot<double>(a, qa) > 0.0) {
    const auto deflated = eigen_signature(deflated_matrix(q, a, 1.0));
    r.deflation_ok = deflated.n_pos == 0 && deflated.n_zero == 1;
    r.complement_ok = negative_definite_on_complement(q, a);
  }
  r.consistent = r.strict == (r.deflation_ok && r.complement_ok);
  return r;
}

bool is_strictly_log_concave_at(const MultiPoly<double>& f, std::span<const double> a) {
  return strict_log_concavity(f, a).strict;
}

LorentzianReport lorentzian_over_cone(const MultiPoly<double>& f, const ConeSpec& cone, std::size_t n_chains,
                                      std::uint64_t seed, bool normalize_sign) {
  if (cone.dim() != f.nvars()) throw DimensionError("lorentzian_over_cone: cone dimension != nvars");
  if (!f.is_homogeneous()) throw DomainError("lorentzian_over_cone: polynomial is not homogeneous");
  LorentzianReport report;
  report.seed = seed;
  if (f.is_zero()) return report;  // the zero polynomial qualifies by convention

  const int d = f.degree();
  const auto per_chain = static_cast<std::size_t>(std::max(d, 1));
  Rng rng(seed);
  const auto samples = cone.sample_interior(n_chains * per_chain, rng);

  MultiPoly<double> g = f;
  if (normalize_sign && !samples.empty() && evaluate(f, std::span<const double>(samples.front())) < 0.0) {
    g = -f;
    report.sign_normalized = true;
  }
  if (d < 2) report.strict = false;

  for (std::size_t c = 0; c < n_chains; ++c) {
    ChainWitness w;
    w.directions.assign(samples.begin() + static_cast<std::ptrdiff_t>(c * per_chain),
                        samples.begin() + static_cast<std::ptrdiff_t>((c + 1) * per_chain));
    bool failed = false;
    if (d < 2) {
      MultiPoly<double> h = g;
      for (const auto& a : w.directions)
        if (d == 1) h = directional_derivative(h, a);
      w.contraction = evaluate(h, std::span<const double>(w.directions.front()));
      w.cls = LorentzClass::NegativeSemidefinite;
      w.signature = eigen_signature(SymMatrix<double>::zeros(f.nvars()));
    } else {
      MultiPoly<double> quad = g;
      for (std::size_t k = 2; k < per_chain; ++k) quad = directional_derivative(quad, w.directions[k]);
      const auto q = hessian_at(quad, std::span<const double>(w.directions.front()));
      w.signature = eigen_signature(q);
      w.cls = lorentz_class(w.signature);
      const auto qa2 = q.matrix() * std::span<const double>(w.directions[1]);
      w.contraction = dot<double>(w.directions[0], qa2);
    }
    ++report.chains;
    if (w.cls == LorentzClass::NotLorentzian) {
      ++report.not_lorentzian;
      failed = true;
    }
    if (!(w.contraction > 0.0)) {
      ++report.nonpositive;
      failed = true;
    }
    if (d >= 2 && w.cls != LorentzClass::LorentzianStrict) {
      ++report.non_strict;
      failed = true;
    }
    if (failed && report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(std::move(w));
  }
  report.holds = report.not_lorentzian == 0 && report.nonpositive == 0;
  report.strict = report.strict && report.holds && report.non_strict == 0;
  return report;
}

KStableReport k_stable_report(const MultiPoly<double>& f, const ConeSpec& cone, std::size_t n_samples,
                              std::uint64_t seed, std::size_t inner_samples) {
  if (cone.dim() != f.nvars()) throw DimensionError("k_stable_check: cone dimension != nvars");
  if (!f.is_homogeneous()) throw DomainError("k_stable_check: polynomial is not homogeneous");
  KStableReport r;
  r.seed = seed;
  Rng rng(seed);
  const auto points = cone.sample_interior(n_samples, rng);
  if (points.size() < n_samples) throw NumericalError("k_stable_check: cone sampling failed");
  for (std::size_t s = 0; s < points.size(); ++s) {
    ++r.samples;
    const auto& y = points[s];
    const bool ok = evaluate(f, std::span<const double>(y)) != 0.0 &&
                    is_hyperbolic(f, y, inner_samples, seed + 1 + s);
    if (!ok) {
      r.stable = false;
      r.witness = y;
      break;
    }
  }
  return r;
}

bool k_stable_check(const MultiPoly<double>& f, const ConeSpec& cone, std::size_t n_samples, std::uint64_t seed,
                    std::size_t inner_samples) {
  return k_stable_report(f, cone, n_samples, seed, inner_samples).stable;
}

bool m_convex_support(const std::vector<Exponents>& support, ExchangeRule rule) {
  const std::set<Exponents> j(support.begin(), support.end());
  for (const auto& alpha : j) {
    for (const auto& beta : j) {
      if (alpha.size() != beta.size()) throw DimensionError("support vectors of different lengths");
      const std::size_t n = alpha.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] <= beta[i]) continue;
        bool found = false;
        for (std::size_t k = 0; k < n && !found; ++k) {
          if (alpha[k] >= beta[k]) continue;
          Exponents a2 = alpha;
          --a2[i];
          ++a2[k];
          if (!j.count(a2)) continue;
          if (rule == ExchangeRule::Symmetric) {
            Exponents b2 = beta;
            ++b2[i];
            --b2[k];
            if (!j.count(b2)) continue;
          }
          found = true;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

bool m_convex_support(const MultiPoly<double>& f, ExchangeRule rule) {
  std::vector<Exponents> support;
  for (const auto& [e, c] : f.terms()) support.push_back(e);
  return m_convex_support(support, rule);
}

}  // namespace lorentz

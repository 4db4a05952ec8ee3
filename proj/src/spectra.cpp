#include "lorentz/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace lorentz {

std::string_view to_string(LorentzClass c) {
  switch (c) {
    case LorentzClass::NegativeSemidefinite:
      return "NEGATIVE_SEMIDEFINITE";
    case LorentzClass::LorentzianStrict:
      return "LORENTZIAN_STRICT";
    case LorentzClass::Lorentzian:
      return "LORENTZIAN";
    case LorentzClass::NotLorentzian:
      return "NOT_LORENTZIAN";
  }
  return "NOT_LORENTZIAN";
}

LorentzClass lorentz_class_from_string(std::string_view s) {
  for (auto c : {LorentzClass::NegativeSemidefinite, LorentzClass::LorentzianStrict,
                 LorentzClass::Lorentzian, LorentzClass::NotLorentzian})
    if (to_string(c) == s) return c;
  throw DomainError("unknown Lorentz class: " + std::string(s));
}

double default_zero_band(const Matrix<double>& q) { return 1e-9 * std::max(1.0, frobenius_norm(q)); }

namespace {

std::vector<double> symmetric_eigenvalues(const Matrix<double>& q) {
  if (q.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(q), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  for (double v : out)
    if (!std::isfinite(v)) throw NumericalError("non-finite eigenvalue");
  return out;
}

void require_vector(const SymMatrix<double>& q, std::span<const double> a) {
  if (a.size() != q.size()) throw DimensionError("vector length does not match matrix size");
}

std::vector<double> mul(const SymMatrix<double>& q, std::span<const double> a) {
  return q.matrix() * a;
}

}  // namespace

SignatureReport eigen_signature(const SymMatrix<double>& q, std::optional<double> tol) {
  SignatureReport r;
  r.tolerance = tol.value_or(default_zero_band(q.matrix()));
  if (!(r.tolerance >= 0.0)) throw DomainError("zero band must be nonnegative");
  r.eigenvalues = symmetric_eigenvalues(q.matrix());
  for (double v : r.eigenvalues) {
    if (std::abs(v) <= r.tolerance) {
      ++r.n_zero;
    } else if (v > 0) {
      ++r.n_pos;
    } else {
      ++r.n_neg;
    }
  }
  return r;
}

LorentzClass lorentz_class(const SignatureReport& s) {
  if (s.n_pos >= 2) return LorentzClass::NotLorentzian;
  if (s.n_pos == 0) return LorentzClass::NegativeSemidefinite;
  return s.n_zero == 0 ? LorentzClass::LorentzianStrict : LorentzClass::Lorentzian;
}

LorentzClass lorentz_class(const SymMatrix<double>& q, std::optional<double> tol) {
  return lorentz_class(eigen_signature(q, tol));
}

SymMatrix<double> deflated_matrix(const SymMatrix<double>& q, std::span<const double> a, double t) {
  require_vector(q, a);
  const auto qa = mul(q, a);
  const double aqa = dot<double>(a, qa);
  const std::size_t n = q.size();
  Matrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = aqa * q(i, j) - t * qa[i] * qa[j];
  // exact symmetry regardless of rounding order
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
  return SymMatrix<double>(std::move(m));
}

bool deflation_check(const SymMatrix<double>& q, std::span<const double> a, double t,
                     std::optional<double> tol) {
  require_vector(q, a);
  const auto qa = mul(q, a);
  if (!(dot<double>(a, qa) > 0.0)) throw DomainError("deflation_check requires aᵀQa > 0");
  if (!(t >= 1.0)) throw DomainError("deflation_check requires t >= 1");
  const auto report = eigen_signature(deflated_matrix(q, a, t), tol);
  return report.n_pos == 0;
}

SymMatrix<double> restrict_to_complement(const SymMatrix<double>& q, std::span<const double> a) {
  require_vector(q, a);
  const std::size_t n = q.size();
  const auto qa = mul(q, a);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = qa[i];
  if (v.norm() == 0.0) throw DomainError("Qa = 0: complement is not a hyperplane");
  // Column-pivoted Householder QR of the n x 1 matrix [Qa]: columns 2..n of
  // the orthogonal factor span (Qa)^⊥.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  const Eigen::MatrixXd full_q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd basis = full_q.rightCols(static_cast<Eigen::Index>(n - 1));
  Eigen::MatrixXd r = basis.transpose() * to_eigen(q.matrix()) * basis;
  r = 0.5 * (r + r.transpose()).eval();
  return SymMatrix<double>(from_eigen(r));
}

bool negative_definite_on_complement(const SymMatrix<double>& q, std::span<const double> a,
                                     std::optional<double> tol) {
  const auto restricted = restrict_to_complement(q, a);
  const auto report = eigen_signature(restricted, tol.value_or(default_zero_band(q.matrix())));
  return report.n_neg == restricted.size();
}

namespace {

class DerivativeCache {
 public:
  explicit DerivativeCache(const MultiPoly<double>& f) : f_(f) {}

  const MultiPoly<double>& get(const Exponents& alpha) {
    auto it = cache_.find(alpha);
    if (it == cache_.end()) it = cache_.emplace(alpha, partial_derivative(f_, alpha)).first;
    return it->second;
  }

 private:
  const MultiPoly<double>& f_;
  std::map<Exponents, MultiPoly<double>> cache_;
};

// Enumerates multi-indices of length n with entries in [0, cap] and total <= max_total.
void enumerate_alphas(std::size_t n, int cap, int max_total, Exponents& cur, std::size_t pos,
                      std::vector<Exponents>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  const int used = total_degree(cur);
  for (int v = 0; v <= cap && used + v <= max_total; ++v) {
    cur[pos] = v;
    enumerate_alphas(n, cap, max_total, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

template <class Visit>
void scan_rayleigh(const MultiPoly<double>& f, std::span<const std::vector<double>> points,
                   RayleighScan scan, Visit&& visit) {
  const std::size_t n = f.nvars();
  const int d = f.degree();
  if (d < 2) return;
  std::vector<Exponents> alphas;
  Exponents cur(n, 0);
  enumerate_alphas(n, scan == RayleighScan::MultiAffine ? 1 : d - 2, d - 2, cur, 0, alphas);
  DerivativeCache cache(f);
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (points[p].size() != n) throw DimensionError("rayleigh_check: point length != nvars");
    std::span<const double> x(points[p]);
    for (const auto& alpha : alphas) {
      const double base = evaluate(cache.get(alpha), x);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          if (scan == RayleighScan::MultiAffine && (i == j || alpha[i] != 0 || alpha[j] != 0)) continue;
          Exponents ai = alpha, aj = alpha;
          ++ai[i];
          ++aj[j];
          Exponents aij = ai;
          ++aij[j];
          RayleighViolation v;
          v.point_index = p;
          v.alpha = alpha;
          v.i = i;
          v.j = j;
          v.lhs = base * evaluate(cache.get(aij), x);
          v.rhs = evaluate(cache.get(ai), x) * evaluate(cache.get(aj), x);
          visit(v);
        }
      }
    }
  }
}

}  // namespace

std::vector<RayleighViolation> rayleigh_check(const MultiPoly<double>& f, double c,
                                              std::span<const std::vector<double>> points,
                                              RayleighScan scan) {
  std::vector<RayleighViolation> out;
  if (std::isinf(c) && c > 0) return out;
  if (!(c > 0)) throw DomainError("rayleigh_check requires c > 0");
  scan_rayleigh(f, points, scan, [&](const RayleighViolation& v) {
    const double bound = c * v.rhs;
    const double slack = kRayleighSlack * std::max({1.0, std::abs(v.lhs), std::abs(bound)});
    if (v.lhs - bound > slack) out.push_back(v);
  });
  return out;
}

RayleighRatio max_rayleigh_ratio(const MultiPoly<double>& f, std::span<const std::vector<double>> points,
                                 RayleighScan scan) {
  RayleighRatio best;
  best.ratio = -std::numeric_limits<double>::infinity();
  scan_rayleigh(f, points, scan, [&](const RayleighViolation& v) {
    if (v.rhs > 0) {
      const double r = v.lhs / v.rhs;
      if (r > best.ratio) {
        best.ratio = r;
        best.witness = v;
      }
    } else if (v.lhs > 0) {
      best.ratio = std::numeric_limits<double>::infinity();
      best.witness = v;
    }
  });
  return best;
}

}  // namespace lorentz

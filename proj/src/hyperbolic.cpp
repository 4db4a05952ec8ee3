#include "lorentz/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>
#include <unsupported/Eigen/Polynomials>

namespace lorentz {

namespace {

double imag_ratio(const std::complex<double>& r) { return std::abs(r.imag()) / (1.0 + std::abs(r)); }

// Disjoint-set helper for root clustering.
std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

// An m-fold root comes back from the eigensolver as m points spread by
// roughly eps^(1/m). Collapse such clusters when their spread is consistent
// with that scatter and their centroid is real.
void collapse_clusters(std::vector<std::complex<double>>& roots) {
  const std::size_t n = roots.size();
  if (n < 2) return;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(roots[i]), std::abs(roots[j]));
      if (std::abs(roots[i] - roots[j]) <= 1e-2 * scale) parent[find_root(parent, i)] = find_root(parent, j);
    }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find_root(parent, i)].push_back(i);
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    std::complex<double> c = 0.0;
    for (auto i : g) c += roots[i];
    c /= static_cast<double>(g.size());
    double spread = 0.0;
    for (auto i : g) spread = std::max(spread, std::abs(roots[i] - c));
    const double m = static_cast<double>(g.size());
    const double allowed = 4.0 * std::pow(1e-12, 1.0 / m) * (1.0 + std::abs(c));
    if (spread <= allowed && imag_ratio(c) <= kRootTolerance) {
      for (auto i : g) roots[i] = {c.real(), 0.0};
    }
  }
}

std::vector<double> normal_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = gauss(rng);
  return x;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void require_hyperbolic_input(const MultiPoly<double>& f, std::span<const double> e, const char* what) {
  detail::require_length(f, e.size(), what);
  if (!f.is_homogeneous()) throw DomainError(std::string(what) + ": polynomial is not homogeneous");
  if (evaluate(f, e) == 0.0) throw DomainError(std::string(what) + ": f(e) = 0");
}

// Rejection sampling of e + rho * ‖e‖ * z with an adaptive radius.
std::vector<std::vector<double>> sample_hyperbolicity_cone(const MultiPoly<double>& f, std::span<const double> e,
                                                           std::size_t count, Rng& rng) {
  const std::size_t n = e.size();
  const double enorm = norm2(e);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  double radius = 1.0;
  int misses = 0;
  std::size_t attempts = 0;
  const std::size_t budget = 200 * std::max<std::size_t>(count, 1) + 1000;
  while (out.size() < count) {
    if (++attempts > budget) throw NumericalError("hyperbolicity cone sampling exhausted its budget");
    auto z = normal_vector(n, rng);
    const double zn = norm2(z);
    const double rho = radius * unif(rng);
    std::vector<double> x(e.begin(), e.end());
    if (zn > 0)
      for (std::size_t i = 0; i < n; ++i) x[i] += rho * enorm * z[i] / zn;
    if (cone_membership(f, e, x, ConeClosure::Open)) {
      out.push_back(std::move(x));
      misses = 0;
      radius = std::min(radius * 1.1, 4.0);
    } else if (++misses >= 8) {
      radius *= 0.5;
      misses = 0;
    }
  }
  return out;
}

}  // namespace

RootProfile real_root_profile(std::span<const double> coeffs) {
  std::size_t top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == 0.0) --top;
  if (top == 0) throw DomainError("real_root_profile: zero polynomial");
  for (std::size_t k = 0; k < top; ++k)
    if (!std::isfinite(coeffs[k])) throw NumericalError("real_root_profile: non-finite coefficient");

  RootProfile p;
  // Exact zero roots are factored out so they don't smear under the eigensolver.
  std::size_t low = 0;
  while (coeffs[low] == 0.0) ++low;
  p.roots.assign(low, {0.0, 0.0});
  const std::size_t deg = top - 1 - low;
  if (deg > 0) {
    double scale = 0.0;
    for (std::size_t k = low; k < top; ++k) scale = std::max(scale, std::abs(coeffs[k]));
    Eigen::VectorXd c(static_cast<Eigen::Index>(deg + 1));
    for (std::size_t k = 0; k <= deg; ++k) c(static_cast<Eigen::Index>(k)) = coeffs[low + k] / scale;
    if (deg == 1) {
      p.roots.emplace_back(-c(0) / c(1), 0.0);
    } else {
      Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
      solver.compute(c);
      const auto& r = solver.roots();
      for (Eigen::Index k = 0; k < r.size(); ++k) {
        if (!std::isfinite(r(k).real()) || !std::isfinite(r(k).imag()))
          throw NumericalError("real_root_profile: eigensolver produced non-finite roots");
        p.roots.push_back(r(k));
      }
    }
  }
  collapse_clusters(p.roots);
  std::sort(p.roots.begin(), p.roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const auto& r : p.roots) {
    p.max_imag_ratio = std::max(p.max_imag_ratio, imag_ratio(r));
    if (!(r.real() < -kRootTolerance * (1.0 + std::abs(r)))) p.all_negative = false;
  }
  p.all_real = p.max_imag_ratio <= kRootTolerance;
  return p;
}

HyperbolicityCertificate hyperbolicity_certificate(const MultiPoly<double>& f, std::span<const double> e,
                                                   std::size_t n_samples, std::uint64_t seed) {
  require_hyperbolic_input(f, e, "is_hyperbolic");
  HyperbolicityCertificate cert;
  cert.seed = seed;
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto x = normal_vector(f.nvars(), rng);
    const auto profile = real_root_profile(restrict_line(f, std::span<const double>(x), e));
    ++cert.samples;
    cert.max_imag_ratio = std::max(cert.max_imag_ratio, profile.max_imag_ratio);
    if (!profile.all_real) {
      cert.hyperbolic = false;
      cert.witness = x;
      break;
    }
  }
  return cert;
}

bool is_hyperbolic(const MultiPoly<double>& f, std::span<const double> e, std::size_t n_samples,
                   std::uint64_t seed) {
  return hyperbolicity_certificate(f, e, n_samples, seed).hyperbolic;
}

bool cone_membership(const MultiPoly<double>& f, std::span<const double> e, std::span<const double> x,
                     ConeClosure closure) {
  detail::require_length(f, x.size(), "cone_membership");
  const auto coeffs = restrict_line(f, x, e);
  if (std::all_of(coeffs.begin(), coeffs.end(), [](double c) { return c == 0.0; })) return false;
  const auto profile = real_root_profile(coeffs);
  if (!profile.all_real) return false;
  if (closure == ConeClosure::Open) return profile.all_negative;
  return std::all_of(profile.roots.begin(), profile.roots.end(),
                     [](const auto& r) { return r.real() <= kRootTolerance * (1.0 + std::abs(r)); });
}

template <class T>
std::vector<T> direction_for_matrix(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("direction_for_matrix: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) throw DimensionError("direction_for_matrix: empty matrix");
  if constexpr (is_exact_v<T>) {
    // Row-reduce [Aᵀ | 𝟙]; free variables are set to zero.
    Matrix<T> m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a(j, i);
      m(i, n) = T(1);
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
      std::size_t p = row;
      while (p < n && m(p, col) == T(0)) ++p;
      if (p == n) continue;
      detail::swap_rows(m, p, row);
      const T pv = m(row, col);
      for (std::size_t j = col; j <= n; ++j) m(row, j) /= pv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == row || m(r, col) == T(0)) continue;
        const T factor = m(r, col);
        for (std::size_t j = col; j <= n; ++j) m(r, j) -= factor * m(row, j);
      }
      pivot_cols.push_back(col);
      ++row;
    }
    for (std::size_t r = row; r < n; ++r)
      if (m(r, n) != T(0)) throw InfeasibleError("no generating direction: 1 is not in the range of A^T");
    std::vector<T> e(n, T(0));
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) e[pivot_cols[r]] = m(r, n);
    return e;
  } else {
    const Eigen::MatrixXd at = to_eigen(a).transpose();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(at);
    const Eigen::VectorXd e = cod.solve(ones);
    const double residual = (at * e - ones).norm();
    if (!std::isfinite(residual) || residual > 1e-9 * std::max(1.0, at.norm()))
      throw InfeasibleError("no generating direction: 1 is not in the range of A^T");
    return std::vector<double>(e.data(), e.data() + e.size());
  }
}

template std::vector<double> direction_for_matrix(const Matrix<double>&);
template std::vector<Rational> direction_for_matrix(const Matrix<Rational>&);

bool interlaces(std::span<const double> g, std::span<const double> f) {
  auto degree_of = [](std::span<const double> c) {
    std::size_t top = c.size();
    while (top > 0 && c[top - 1] == 0.0) --top;
    if (top == 0) throw DomainError("interlaces: zero polynomial");
    return top - 1;
  };
  if (degree_of(g) + 1 != degree_of(f)) throw DimensionError("interlaces: requires deg g = deg f - 1");
  const auto pf = real_root_profile(f);
  const auto pg = real_root_profile(g);
  if (!pf.all_real || !pg.all_real) throw DomainError("interlaces: polynomial is not real-rooted");
  constexpr double slack = 1e-7;
  auto le = [&](double a, double b) { return a <= b + slack * (1.0 + std::max(std::abs(a), std::abs(b))); };
  for (std::size_t i = 0; i < pg.roots.size(); ++i) {
    const double beta = pg.roots[i].real();
    if (!le(pf.roots[i].real(), beta) || !le(beta, pf.roots[i + 1].real())) return false;
  }
  return true;
}

bool relaxation_inclusion_check(const MultiPoly<double>& f, std::span<const double> e, int k,
                                std::size_t n_samples, std::uint64_t seed) {
  require_hyperbolic_input(f, e, "relaxation_inclusion_check");
  if (k < 1 || k >= f.degree()) throw DomainError("relaxation_inclusion_check: need 1 <= k < deg f");
  std::vector<MultiPoly<double>> relaxations;
  MultiPoly<double> g = f;
  for (int m = 1; m <= k; ++m) {
    g = directional_derivative(g, e);
    relaxations.push_back(g);
  }
  Rng rng(seed);
  const auto points = sample_hyperbolicity_cone(f, e, n_samples, rng);
  for (const auto& x : points)
    for (const auto& r : relaxations)
      if (!cone_membership(r, e, x, ConeClosure::Closed)) return false;
  return true;
}

// ---------------------------------------------------------------------------

ConeSpec ConeSpec::orthant(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DimensionError("orthant cone needs n >= 1");
  return ConeSpec(OrthantCone{n}, seed);
}

ConeSpec ConeSpec::generated(std::vector<std::vector<double>> generators, std::uint64_t seed) {
  if (generators.empty()) throw DimensionError("generated cone needs at least one generator");
  const std::size_t n = generators.front().size();
  if (n == 0) throw DimensionError("generators must be nonempty vectors");
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionError("generators have different lengths");
    if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; }))
      throw DomainError("zero generator");
  }
  return ConeSpec(GeneratedCone{std::move(generators)}, seed);
}

ConeSpec ConeSpec::hyperbolicity(MultiPoly<double> f, std::vector<double> e, std::uint64_t seed,
                                 std::size_t check_samples) {
  require_hyperbolic_input(f, e, "hyperbolicity cone");
  if (!(evaluate(f, std::span<const double>(e)) > 0.0)) throw DomainError("hyperbolicity cone requires f(e) > 0");
  if (!is_hyperbolic(f, e, check_samples, seed))
    throw DomainError("hyperbolicity cone: f is not hyperbolic in direction e");
  return ConeSpec(HyperbolicityCone{std::move(f), std::move(e)}, seed);
}

std::size_t ConeSpec::dim() const {
  return std::visit(
      [](const auto& c) -> std::size_t {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, OrthantCone>) {
          return c.dim;
        } else if constexpr (std::is_same_v<C, GeneratedCone>) {
          return c.generators.front().size();
        } else {
          return c.direction.size();
        }
      },
      variant_);
}

const char* ConeSpec::kind() const {
  switch (variant_.index()) {
    case 0:
      return "orthant";
    case 1:
      return "generators";
    default:
      return "hyperbolicity";
  }
}

bool ConeSpec::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionError("cone membership: point length != cone dimension");
  return std::visit(
      [&](const auto& c) -> bool {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, OrthantCone>) {
          return std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
        } else if constexpr (std::is_same_v<C, GeneratedCone>) {
          // Closed conic hull, up to a relative residual.
          return nnls_residual(c.generators, x) <= 1e-9 * std::max(1.0, norm2(x));
        } else {
          return cone_membership(c.poly, c.direction, x, ConeClosure::Open);
        }
      },
      variant_);
}

std::vector<std::vector<double>> ConeSpec::sample_interior(std::size_t count, Rng& rng) const {
  return std::visit(
      [&](const auto& c) -> std::vector<std::vector<double>> {
        using C = std::decay_t<decltype(c)>;
        std::exponential_distribution<double> expo(1.0);
        std::vector<std::vector<double>> out;
        if constexpr (std::is_same_v<C, OrthantCone>) {
          for (std::size_t s = 0; s < count; ++s) {
            std::vector<double> x(c.dim);
            for (auto& v : x) v = expo(rng);
            out.push_back(std::move(x));
          }
        } else if constexpr (std::is_same_v<C, GeneratedCone>) {
          const std::size_t n = c.generators.front().size();
          for (std::size_t s = 0; s < count; ++s) {
            std::vector<double> w(c.generators.size());
            double total = 0.0;
            for (auto& v : w) total += (v = expo(rng));
            std::vector<double> x(n, 0.0);
            for (std::size_t g = 0; g < w.size(); ++g)
              for (std::size_t i = 0; i < n; ++i) x[i] += (w[g] / total) * c.generators[g][i];
            out.push_back(std::move(x));
          }
        } else {
          out = sample_hyperbolicity_cone(c.poly, c.direction, count, rng);
        }
        return out;
      },
      variant_);
}

std::vector<std::vector<double>> ConeSpec::sample_interior(std::size_t count) const {
  Rng rng(seed_);
  return sample_interior(count, rng);
}

double nnls_residual(const std::vector<std::vector<double>>& generators, std::span<const double> x,
                     std::vector<double>* weights) {
  if (generators.empty()) throw DimensionError("nnls: no generators");
  const auto m = static_cast<Eigen::Index>(generators.size());
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (static_cast<Eigen::Index>(generators[j].size()) != n) throw DimensionError("nnls: generator length");
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = generators[j][i];
  }
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) b(i) = x[i];

  // Lawson-Hanson active set.
  const double tol = 1e-12 * std::max(1.0, a.norm() * b.norm());
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < m; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd ap(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    const Eigen::VectorXd zp = ap.completeOrthogonalDecomposition().solve(b);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(m);
    for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<Eigen::Index>(k));
    return z;
  };
  for (int outer = 0; outer < 3 * m + 10; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (b - a * lambda);
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive[best] = true;
    for (int inner = 0; inner < 3 * m + 10; ++inner) {
      const Eigen::VectorXd z = solve_passive();
      bool positive = true;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j] && z(j) <= 0.0) positive = false;
      if (positive) {
        lambda = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j] && z(j) <= 0.0) alpha = std::min(alpha, lambda(j) / (lambda(j) - z(j)));
      lambda += alpha * (z - lambda);
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[j] && lambda(j) <= 1e-15) {
          passive[j] = false;
          lambda(j) = 0.0;
        }
    }
  }
  if (weights) weights->assign(lambda.data(), lambda.data() + lambda.size());
  return (a * lambda - b).norm();
}

}  // namespace lorentz

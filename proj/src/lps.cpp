#include "lorentz/lps.hpp"

#include <cmath>

#include "lorentz/spectra.hpp"

namespace lorentz {

namespace {

void require_gnk(int n, int k) {
  if (n < 1) throw DomainError("G(n,k) needs n >= 1");
  if (k < 2) throw DomainError("G(n,k) needs k >= 2");
}

// ⌊√v⌋ for v >= 0, exactly.
int isqrt(int v) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class T>
void require_local(const SymMatrix<T>& m, int k) {
  if (m.size() > kLocalPsdCap) throw DomainError("locally PSD test: size cap (16) exceeded");
  if (k < 1 || static_cast<std::size_t>(k) > m.size()) throw DomainError("locally PSD test: need 1 <= k <= n");
}

struct SubmatrixVerdict {
  bool psd = false;
  bool singular = false;
};

SubmatrixVerdict classify(const Matrix<Rational>& sub, std::optional<double>) {
  const auto e = eigen_elementary_symmetric(sub);
  SubmatrixVerdict v;
  v.psd = std::all_of(e.begin(), e.end(), [](const Rational& c) { return c >= 0; });
  v.singular = e.back() == 0;
  return v;
}

SubmatrixVerdict classify(const Matrix<double>& sub, std::optional<double> tol) {
  const auto report = eigen_signature(SymMatrix<double>(sub), tol);
  SubmatrixVerdict v;
  v.psd = report.n_neg == 0;
  v.singular = report.n_zero > 0;
  return v;
}

}  // namespace

SymMatrix<Rational> gnk(int n, int k) {
  require_gnk(n, k);
  const auto un = static_cast<std::size_t>(n);
  Matrix<Rational> g(un, un, Rational(-1, k - 1));
  for (std::size_t i = 0; i < un; ++i) g(i, i) = 1;
  return SymMatrix<Rational>(std::move(g));
}

Rational gnk_per_closed_form(int n, int k) {
  require_gnk(n, k);
  Rational sum = 0;
  Rational falling = 1;  // n!/(n−i)!
  Rational power = 1;    // (−1/k)^i
  for (int i = 0; i <= n; ++i) {
    sum += power * falling;
    falling *= (n - i);
    power *= Rational(-1, k);
  }
  Rational ratio(k, k - 1);
  Rational scale = 1;
  for (int i = 0; i < n; ++i) scale *= ratio;
  return scale * sum;
}

PositivityVerdict nls_positivity_predicate(int n, int k) {
  require_gnk(n, k);
  PositivityVerdict v;
  if (n == 4 && k == 2) {
    v.guaranteed_positive = true;
    v.reason = "(n,k) = (4,2)";
  } else if (n % 2 == 0) {
    v.guaranteed_positive = n - 1 > k && k > 2;
    v.reason = v.guaranteed_positive ? "even n with n-1 > k > 2" : "even n outside n-1 > k > 2";
  } else {
    v.guaranteed_positive = n - 1 > k && k * k > 2 * (n - 1);
    v.reason = v.guaranteed_positive ? "odd n with n-1 > k > sqrt(2(n-1))"
                                     : "odd n outside n-1 > k > sqrt(2(n-1))";
  }
  // G(n,k) is itself NLS of type (n,k), so a non-positive per(G(n,k))
  // refutes the bound; this happens for odd n from (23,7) on.
  if (v.guaranteed_positive && gnk_per_closed_form(n, k) <= 0) {
    v.guaranteed_positive = false;
    v.reason += ", but per(G(n,k)) <= 0 refutes the bound here";
  }
  return v;
}

std::vector<int> nested_k_range(int n) {
  if (n < 2) throw DomainError("nested range needs n >= 2");
  std::vector<int> ks;
  for (int k = 1 + isqrt(2 * (n - 1)); k <= n - 1; ++k) ks.push_back(k);
  if (ks.empty()) throw DomainError("nested range is empty for n = " + std::to_string(n));
  return ks;
}

NestedCheck gnk_nested_report(int n) {
  NestedCheck r;
  r.ks = nested_k_range(n);
  for (int k : r.ks) r.values.push_back(gnk_per_closed_form(n, k));
  r.decreasing = true;
  for (std::size_t i = 1; i < r.values.size(); ++i)
    if (!(r.values[i - 1] > r.values[i])) r.decreasing = false;
  const Rational top = gnk_per_closed_form(4, 2);
  r.below_g42 = std::all_of(r.values.begin(), r.values.end(), [&](const Rational& v) { return v < top; });
  r.holds = r.decreasing && r.below_g42;
  return r;
}

bool gnk_nested_check(int n) { return gnk_nested_report(n).holds; }

NormalizedGnk gnk_normalized(int n, int k) {
  NormalizedGnk out;
  out.matrix = Rational(1, n) * gnk(n, k).matrix();
  Rational nn = 1;
  for (int i = 0; i < n; ++i) nn *= n;
  out.per = gnk_per_closed_form(n, k) / nn;
  return out;
}

Matrix<Rational> cnm(int n, int m) {
  if (n < 1) throw DomainError("C(n,m) needs n >= 1");
  if (m < 0 || m > n) throw DomainError("C(n,m) needs 0 <= m <= n");
  const auto un = static_cast<std::size_t>(n);
  Matrix<Rational> c(un, un, Rational(1));
  for (int i = n - m; i < n; ++i) c(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = -1;
  if (m == n && n >= 2 && !(c == -gnk(n, 2).matrix())) throw std::logic_error("C(n,n) != -G(n,2)");
  return c;
}

std::vector<Rational> eigen_elementary_symmetric(const Matrix<Rational>& a) {
  if (!a.is_square()) throw DimensionError("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  // det(λI − A) = Σ c_j λ^j with c_n = 1; e_j = (−1)^j c_{n−j}.
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix<Rational> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    c[n - k] = -trace(a * mk) / Rational(static_cast<long>(k));
  }
  std::vector<Rational> e(n + 1);
  for (std::size_t j = 0; j <= n; ++j) e[j] = (j % 2 == 0) ? c[n - j] : Rational(-c[n - j]);
  return e;
}

template <class T>
bool is_k_locally_psd(const SymMatrix<T>& m, int k, std::optional<double> tol) {
  require_local(m, k);
  bool ok = true;
  for_each_subset(m.size(), static_cast<std::size_t>(k), [&](std::span<const std::size_t> idx) {
    ok = classify(principal_submatrix(m.matrix(), idx), tol).psd;
    return ok;
  });
  return ok;
}

template <class T>
bool is_nls(const SymMatrix<T>& m, int k, std::optional<double> tol) {
  require_local(m, k);
  bool ok = true;
  for_each_subset(m.size(), static_cast<std::size_t>(k), [&](std::span<const std::size_t> idx) {
    const auto v = classify(principal_submatrix(m.matrix(), idx), tol);
    ok = v.psd && v.singular;
    return ok;
  });
  if (!ok) return false;
  const T det = determinant(m.matrix());
  if constexpr (is_exact_v<T>) {
    return det != 0;
  } else {
    return std::abs(det) > 1e-9 * frobenius_norm(m.matrix());
  }
}

template bool is_k_locally_psd(const SymMatrix<double>&, int, std::optional<double>);
template bool is_k_locally_psd(const SymMatrix<Rational>&, int, std::optional<double>);
template bool is_nls(const SymMatrix<double>&, int, std::optional<double>);
template bool is_nls(const SymMatrix<Rational>&, int, std::optional<double>);

}  // namespace lorentz

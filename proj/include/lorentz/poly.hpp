#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lorentz/errors.hpp"
#include "lorentz/matrix.hpp"
#include "lorentz/scalar.hpp"

namespace lorentz {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded-lex order: total degree first, then lexicographic on exponents.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

template <class T>
struct Term {
  Exponents exponents;
  T coefficient;
};

/// Sparse multivariate polynomial. Immutable once built: every operation
/// returns a new value. Coefficients are never stored as zero.
template <class T>
class MultiPoly {
 public:
  using Scalar = T;
  using TermMap = std::map<Exponents, T, GradedLexLess>;

  explicit MultiPoly(std::size_t nvars = 1) : nvars_(nvars) {
    if (nvars == 0) throw DimensionError("polynomial needs at least one variable");
  }

  MultiPoly(std::size_t nvars, const std::vector<Term<T>>& terms) : MultiPoly(nvars) {
    for (const auto& t : terms) {
      validate(t.exponents);
      accumulate(terms_, t.exponents, t.coefficient);
    }
    refresh_degree();
  }

  // Takes ownership of an already-accumulated map (zeros removed).
  static MultiPoly from_map(std::size_t nvars, TermMap terms) {
    MultiPoly p(nvars);
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->second == T(0)) {
        it = terms.erase(it);
      } else {
        p.validate(it->first);
        ++it;
      }
    }
    p.terms_ = std::move(terms);
    p.refresh_degree();
    return p;
  }

  static MultiPoly constant(std::size_t nvars, const T& c) {
    return MultiPoly(nvars, {Term<T>{Exponents(nvars, 0), c}});
  }

  static MultiPoly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionError("variable index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return MultiPoly(nvars, {Term<T>{e, T(1)}});
  }

  static MultiPoly linear_form(std::span<const T> coeffs) {
    MultiPoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponents e(coeffs.size(), 0);
      e[i] = 1;
      accumulate(p.terms_, e, coeffs[i]);
    }
    p.refresh_degree();
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& kv) { return total_degree(kv.first) == degree_; });
  }

  T coefficient(std::span<const int> alpha) const {
    if (alpha.size() != nvars_) throw DimensionError("multi-index length != nvars");
    auto it = terms_.find(Exponents(alpha.begin(), alpha.end()));
    return it == terms_.end() ? T(0) : it->second;
  }

  template <class U>
  MultiPoly<U> cast() const {
    typename MultiPoly<U>::TermMap out;
    for (const auto& [e, c] : terms_) {
      if constexpr (std::is_same_v<U, double>) {
        out.emplace(e, to_double(c));
      } else {
        out.emplace(e, U(c));
      }
    }
    return MultiPoly<U>::from_map(nvars_, std::move(out));
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(to_double(c)));
    return m;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.require_same_space(b);
    TermMap out = a.terms_;
    for (const auto& [e, c] : b.terms_) accumulate(out, e, c);
    return from_map(a.nvars_, std::move(out));
  }

  friend MultiPoly operator-(const MultiPoly& a) {
    TermMap out = a.terms_;
    for (auto& kv : out) kv.second = -kv.second;
    return from_map(a.nvars_, std::move(out));
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

  friend MultiPoly operator*(const T& s, const MultiPoly& a) {
    if (s == T(0)) return MultiPoly(a.nvars_);
    TermMap out = a.terms_;
    for (auto& kv : out) kv.second *= s;
    return from_map(a.nvars_, std::move(out));
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_same_space(b);
    TermMap out;
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        accumulate(out, e, ca * cb);
      }
    return from_map(a.nvars_, std::move(out));
  }

  static void accumulate(TermMap& map, const Exponents& e, const T& c) {
    if (c == T(0)) return;
    auto [it, inserted] = map.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) map.erase(it);
    }
  }

 private:
  void validate(const Exponents& e) const {
    if (e.size() != nvars_) throw DimensionError("exponent vector length != nvars");
    for (int v : e)
      if (v < 0) throw DomainError("negative exponent");
  }

  void require_same_space(const MultiPoly& b) const {
    if (nvars_ != b.nvars_) throw DimensionError("polynomials live in different variable counts");
  }

  void refresh_degree() {
    degree_ = 0;
    for (const auto& kv : terms_) degree_ = std::max(degree_, total_degree(kv.first));
  }

  std::size_t nvars_ = 1;
  int degree_ = 0;
  TermMap terms_;
};

using RealPoly = MultiPoly<double>;
using RationalPoly = MultiPoly<Rational>;

namespace detail {

template <class T>
void require_length(const MultiPoly<T>& f, std::size_t n, const char* what) {
  if (n != f.nvars()) throw DimensionError(std::string(what) + ": length does not match nvars");
}

// powers[i][p] = x_i^p for p <= max exponent of variable i.
template <class T>
std::vector<std::vector<T>> power_table(const MultiPoly<T>& f, std::span<const T> x) {
  std::vector<int> maxexp(f.nvars(), 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i) maxexp[i] = std::max(maxexp[i], e[i]);
  std::vector<std::vector<T>> pw(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    pw[i].assign(static_cast<std::size_t>(maxexp[i]) + 1, T(1));
    for (int p = 1; p <= maxexp[i]; ++p) pw[i][p] = pw[i][p - 1] * x[i];
  }
  return pw;
}

// Falling factorial k (k-1) ... (k-m+1).
inline long long falling(int k, int m) {
  long long r = 1;
  for (int i = 0; i < m; ++i) r *= (k - i);
  return r;
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> c(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace detail

template <class T>
T evaluate(const MultiPoly<T>& f, std::span<const T> x) {
  detail::require_length(f, x.size(), "evaluate");
  if (f.is_zero()) return T(0);
  const auto pw = detail::power_table(f, x);
  T sum(0);
  for (const auto& [e, c] : f.terms()) {
    T term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= pw[i][e[i]];
    sum += term;
  }
  return sum;
}

template <class T>
T evaluate(const MultiPoly<T>& f, const std::vector<T>& x) {
  return evaluate(f, std::span<const T>(x));
}

/// ∂^α f. The zero polynomial when some α_i exceeds every exponent of x_i.
template <class T>
MultiPoly<T> partial_derivative(const MultiPoly<T>& f, std::span<const int> alpha) {
  detail::require_length(f, alpha.size(), "partial_derivative");
  typename MultiPoly<T>::TermMap out;
  Exponents ne(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    bool survives = true;
    long long factor = 1;
    for (std::size_t i = 0; i < e.size() && survives; ++i) {
      if (alpha[i] < 0) throw DomainError("negative derivative order");
      if (e[i] < alpha[i]) {
        survives = false;
      } else {
        factor *= detail::falling(e[i], alpha[i]);
        ne[i] = e[i] - alpha[i];
      }
    }
    if (survives) MultiPoly<T>::accumulate(out, ne, c * T(factor));
  }
  return MultiPoly<T>::from_map(f.nvars(), std::move(out));
}

template <class T>
MultiPoly<T> partial_derivative(const MultiPoly<T>& f, const Exponents& alpha) {
  return partial_derivative(f, std::span<const int>(alpha));
}

template <class T>
MultiPoly<T> derivative(const MultiPoly<T>& f, std::size_t i) {
  if (i >= f.nvars()) throw DimensionError("variable index out of range");
  Exponents alpha(f.nvars(), 0);
  alpha[i] = 1;
  return partial_derivative(f, alpha);
}

/// D_a f = Σ a_i ∂_i f.
template <class T>
MultiPoly<T> directional_derivative(const MultiPoly<T>& f, std::span<const T> a) {
  detail::require_length(f, a.size(), "directional_derivative");
  typename MultiPoly<T>::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 || a[i] == T(0)) continue;
      Exponents ne = e;
      --ne[i];
      MultiPoly<T>::accumulate(out, ne, c * a[i] * T(e[i]));
    }
  }
  return MultiPoly<T>::from_map(f.nvars(), std::move(out));
}

template <class T>
MultiPoly<T> directional_derivative(const MultiPoly<T>& f, const std::vector<T>& a) {
  return directional_derivative(f, std::span<const T>(a));
}

template <class T>
std::vector<T> gradient_at(const MultiPoly<T>& f, std::span<const T> x) {
  detail::require_length(f, x.size(), "gradient_at");
  std::vector<T> g(f.nvars(), T(0));
  if (f.is_zero()) return g;
  const auto pw = detail::power_table(f, x);
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      T term = c * T(e[i]);
      for (std::size_t k = 0; k < e.size(); ++k) {
        const int p = k == i ? e[k] - 1 : e[k];
        if (p > 0) term *= pw[k][p];
      }
      g[i] += term;
    }
  }
  return g;
}

/// Matrix of second partials at x. Zero matrix when deg f < 2.
template <class T>
SymMatrix<T> hessian_at(const MultiPoly<T>& f, std::span<const T> x) {
  detail::require_length(f, x.size(), "hessian_at");
  const std::size_t n = f.nvars();
  Matrix<T> h(n, n);
  if (f.degree() < 2) return SymMatrix<T>(std::move(h));
  const auto pw = detail::power_table(f, x);
  std::vector<int> p(n);
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      for (std::size_t j = i; j < n; ++j) {
        long long factor;
        if (i == j) {
          if (e[i] < 2) continue;
          factor = static_cast<long long>(e[i]) * (e[i] - 1);
        } else {
          if (e[j] == 0) continue;
          factor = static_cast<long long>(e[i]) * e[j];
        }
        for (std::size_t k = 0; k < n; ++k) p[k] = e[k];
        --p[i];
        --p[j];
        T term = c * T(factor);
        for (std::size_t k = 0; k < n; ++k)
          if (p[k] > 0) term *= pw[k][p[k]];
        h(i, j) += term;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = h(j, i);
  return SymMatrix<T>(std::move(h));
}

template <class T>
SymMatrix<T> hessian_at(const MultiPoly<T>& f, const std::vector<T>& x) {
  return hessian_at(f, std::span<const T>(x));
}

/// f(M y): M has f.nvars() rows; the result lives in M.cols() variables.
template <class T>
MultiPoly<T> compose_linear(const MultiPoly<T>& f, const Matrix<T>& m) {
  if (m.rows() != f.nvars()) throw DimensionError("compose_linear: rows(M) != nvars");
  if (m.cols() == 0) throw DimensionError("compose_linear: M has no columns");
  const std::size_t n_out = m.cols();
  std::vector<MultiPoly<T>> forms;
  forms.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    std::vector<T> row(m.row(i).begin(), m.row(i).end());
    forms.push_back(MultiPoly<T>::linear_form(row));
  }
  // powers[i][p] = forms[i]^p, filled lazily
  std::vector<std::vector<MultiPoly<T>>> powers(f.nvars());
  auto power = [&](std::size_t i, int p) -> const MultiPoly<T>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly<T>::constant(n_out, T(1)));
    while (static_cast<int>(cache.size()) <= p) cache.push_back(cache.back() * forms[i]);
    return cache[p];
  };
  MultiPoly<T> result(n_out);
  for (const auto& [e, c] : f.terms()) {
    MultiPoly<T> term = MultiPoly<T>::constant(n_out, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    result = result + term;
  }
  return result;
}

/// Coefficients of t ↦ f(x + t e), constant term first.
template <class T>
std::vector<T> restrict_line(const MultiPoly<T>& f, std::span<const T> x, std::span<const T> e) {
  detail::require_length(f, x.size(), "restrict_line(x)");
  detail::require_length(f, e.size(), "restrict_line(e)");
  const int d = f.degree();
  std::vector<T> out(static_cast<std::size_t>(d) + 1, T(0));
  std::vector<std::vector<std::vector<T>>> powers(f.nvars());
  auto power = [&](std::size_t i, int p) -> const std::vector<T>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back({T(1)});
    while (static_cast<int>(cache.size()) <= p)
      cache.push_back(detail::poly_mul(cache.back(), std::vector<T>{x[i], e[i]}));
    return cache[p];
  };
  for (const auto& [ex, c] : f.terms()) {
    std::vector<T> term{c};
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i] > 0) term = detail::poly_mul(term, power(i, ex[i]));
    for (std::size_t k = 0; k < term.size(); ++k) out[k] += term[k];
  }
  return out;
}

template <class T>
std::vector<T> restrict_line(const MultiPoly<T>& f, const std::vector<T>& x, const std::vector<T>& e) {
  return restrict_line(f, std::span<const T>(x), std::span<const T>(e));
}

/// f with x_k set to 0.
template <class T>
MultiPoly<T> substitute_zero(const MultiPoly<T>& f, std::size_t k) {
  if (k >= f.nvars()) throw DimensionError("variable index out of range");
  typename MultiPoly<T>::TermMap out;
  for (const auto& [e, c] : f.terms())
    if (e[k] == 0) out.emplace(e, c);
  return MultiPoly<T>::from_map(f.nvars(), std::move(out));
}

/// Largest coefficient difference, max_α |f_α - g_α|.
template <class T>
double coefficient_distance(const MultiPoly<T>& f, const MultiPoly<T>& g) {
  return (f - g).max_abs_coefficient();
}

}  // namespace lorentz

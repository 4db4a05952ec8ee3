#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lorentz/errors.hpp"
#include "lorentz/scalar.hpp"

namespace lorentz {

/// Dense row-major matrix over double or Rational.
template <class T>
class Matrix {
 public:
  using Scalar = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if constexpr (std::is_same_v<U, double>) {
          out(i, j) = to_double((*this)(i, j));
        } else {
          out(i, j) = U((*this)(i, j));
        }
      }
    return out;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& v : c.data_) v = -v;
    return c;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, std::span<const T> x) {
    if (a.cols_ != x.size()) throw DimensionError("matrix-vector shape mismatch");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, std::span<const T> x) {
  return a * x;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T trace(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("trace of non-square matrix");
  T s(0);
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

template <class T>
Matrix<T> outer(std::span<const T> u, std::span<const T> v) {
  Matrix<T> m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

namespace detail {

// Index of the pivot for column `col` among rows [col, n): largest magnitude
// in float mode, first nonzero in exact mode. Returns n if the column is zero.
template <class T>
std::size_t choose_pivot(const Matrix<T>& m, std::size_t col, std::size_t start) {
  const std::size_t n = m.rows();
  if constexpr (is_exact_v<T>) {
    for (std::size_t r = start; r < n; ++r)
      if (m(r, col) != 0) return r;
    return n;
  } else {
    std::size_t best = n;
    double best_abs = 0.0;
    for (std::size_t r = start; r < n; ++r) {
      const double v = std::abs(m(r, col));
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    return best;
  }
}

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

template <class T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = detail::choose_pivot(m, c, c);
    if (p == n) return T(0);
    if (p != c) {
      detail::swap_rows(m, p, c);
      det = -det;
    }
    const T pivot = m(c, c);
    det *= pivot;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == T(0)) continue;
      const T factor = m(r, c) / pivot;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// Gauss-Jordan inverse. Throws DomainError when the matrix is singular
/// (exactly, or to working precision in float mode).
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  double scale = 0.0;
  if constexpr (!is_exact_v<T>) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = detail::choose_pivot(m, c, c);
    bool singular = p == n;
    if constexpr (!is_exact_v<T>) {
      if (!singular && std::abs(m(p, c)) <= 1e-14 * scale * static_cast<double>(n)) singular = true;
    }
    if (singular) throw DomainError("matrix is singular");
    detail::swap_rows(m, p, c);
    detail::swap_rows(inv, p, c);
    const T pivot = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == T(0)) continue;
      const T factor = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= factor * m(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

template <class T>
Eigen::MatrixXd to_eigen(const Matrix<T>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
  return out;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& m) {
  Matrix<double> out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

template <class T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = to_double(m(i, j));
      s += v * v;
    }
  return std::sqrt(s);
}

/// Real symmetric matrix. Symmetry is checked exactly at construction.
template <class T>
class SymMatrix {
 public:
  using Scalar = T;

  SymMatrix() = default;
  explicit SymMatrix(Matrix<T> m) : m_(std::move(m)) {
    if (!m_.is_square()) throw DimensionError("symmetric matrix must be square");
    if (!m_.is_symmetric()) throw DomainError("matrix is not symmetric");
  }

  static SymMatrix zeros(std::size_t n) { return SymMatrix(Matrix<T>(n, n)); }

  std::size_t size() const { return m_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix<T>& matrix() const { return m_; }

  template <class U>
  SymMatrix<U> cast() const {
    return SymMatrix<U>(m_.template cast<U>());
  }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.m_ == b.m_; }

 private:
  Matrix<T> m_;
};

/// Principal submatrix on the given (sorted) index set.
template <class T>
Matrix<T> principal_submatrix(const Matrix<T>& m, std::span<const std::size_t> idx) {
  Matrix<T> s(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) s(a, b) = m(idx[a], idx[b]);
  return s;
}

}  // namespace lorentz

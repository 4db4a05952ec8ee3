#include "lorentz/permanent.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <future>

namespace lorentz {

namespace {

// The Gray-code sweep is split into a fixed number of blocks so that the
// reduction order, and therefore float results, do not depend on the
// number of threads.
constexpr std::uint64_t kBlocks = 64;

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

// Σ_{S ⊆ [n]} (−1)^{|S|} Π_i rowsum_i(S) over gray codes in [begin, end).
template <class Acc, class Entry>
Acc ryser_block(const std::vector<std::vector<Entry>>& cols, std::size_t n, std::uint64_t begin,
                std::uint64_t end) {
  std::vector<Acc> rowsum(n, Acc(0));
  std::uint64_t gray = begin ^ (begin >> 1);
  for (std::size_t j = 0; j < n; ++j)
    if (gray >> j & 1)
      for (std::size_t i = 0; i < n; ++i) rowsum[i] += Acc(cols[j][i]);
  Acc total(0);
  for (std::uint64_t k = begin; k < end; ++k) {
    if (k != begin) {
      const int j = std::countr_zero(k);
      const bool adding = ((k ^ (k >> 1)) >> j) & 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (adding) {
          rowsum[i] += Acc(cols[j][i]);
        } else {
          rowsum[i] -= Acc(cols[j][i]);
        }
      }
      gray = k ^ (k >> 1);
    }
    if (gray == 0) continue;
    Acc prod(1);
    for (std::size_t i = 0; i < n; ++i) prod *= rowsum[i];
    if (std::popcount(gray) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

template <class Acc, class Entry>
Acc ryser_sum(const std::vector<std::vector<Entry>>& cols, std::size_t n) {
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t blocks = n < 12 ? 1 : kBlocks;
  const std::uint64_t step = count / blocks;
  std::vector<Acc> partial(blocks, Acc(0));
  const std::size_t workers = std::min<std::size_t>(thread_budget(), blocks);
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) partial[b] = ryser_block<Acc>(cols, n, b * step, (b + 1) * step);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers)
          partial[b] = ryser_block<Acc>(cols, n, b * step, (b + 1) * step);
      }));
    for (auto& j : jobs) j.get();
  }
  Acc total(0);
  for (const auto& p : partial) total += p;
  return (n % 2 == 1) ? Acc(-total) : total;
}

template <class T>
std::vector<std::vector<T>> columns_of(const Matrix<T>& a) {
  std::vector<std::vector<T>> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
  return cols;
}

void require_ryser_shape(std::size_t rows, std::size_t cols) {
  if (rows != cols) throw DimensionError("permanent of non-square matrix");
  if (rows > kRyserCap) throw DomainError("permanent_ryser: size cap exceeded");
}

}  // namespace

double permanent_ryser(const Matrix<double>& a) {
  require_ryser_shape(a.rows(), a.cols());
  const std::size_t n = a.rows();
  if (n == 0) return 1.0;
  return ryser_sum<double>(columns_of(a), n);
}

Rational permanent_ryser(const Matrix<Rational>& a) {
  require_ryser_shape(a.rows(), a.cols());
  const std::size_t n = a.rows();
  if (n == 0) return Rational(1);
  // Row i scaled by the lcm of its denominators: per(A) = per(B) / Π scale_i.
  std::vector<BigInt> scale(n, BigInt(1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt den = boost::multiprecision::denominator(a(i, j));
      scale[i] = scale[i] / boost::multiprecision::gcd(scale[i], den) * den;
    }
  std::vector<std::vector<BigInt>> cols(n, std::vector<BigInt>(n));
  double log2_bound = static_cast<double>(n) + 2.0;
  bool fits_int64 = true;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt row_abs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational scaled = a(i, j) * Rational(scale[i]);
      cols[j][i] = boost::multiprecision::numerator(scaled);
      row_abs += boost::multiprecision::abs(cols[j][i]);
      if (boost::multiprecision::abs(cols[j][i]) > BigInt(INT64_MAX)) fits_int64 = false;
    }
    log2_bound += row_abs == 0 ? 0.0 : std::log2(row_abs.convert_to<double>());
  }
  BigInt per;
  if (fits_int64 && log2_bound < 125.0) {
    // Every partial product and the final sum fit in 128-bit integers.
    std::vector<std::vector<std::int64_t>> small(n, std::vector<std::int64_t>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) small[j][i] = cols[j][i].convert_to<std::int64_t>();
    const Int128 v = ryser_sum<Int128>(small, n);
    const bool neg = v < 0;
    UInt128 mag = neg ? -static_cast<UInt128>(v) : static_cast<UInt128>(v);
    const auto hi = static_cast<std::uint64_t>(mag >> 64);
    const auto lo = static_cast<std::uint64_t>(mag);
    per = (BigInt(hi) << 64) + BigInt(lo);
    if (neg) per = -per;
  } else {
    per = ryser_sum<BigInt>(cols, n);
  }
  BigInt denom = 1;
  for (const auto& s : scale) denom *= s;
  return Rational(per, denom);
}

Matrix<double> sinkhorn_normalize(const Matrix<double>& a, int max_iter, double tol) {
  if (!a.is_square()) throw DimensionError("sinkhorn_normalize: matrix must be square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(a(i, j) > 0.0)) throw DomainError("sinkhorn_normalize: entries must be positive");
  Matrix<double> m = a;
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j);
      for (std::size_t j = 0; j < n; ++j) m(i, j) /= s;
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += m(i, j);
      for (std::size_t i = 0; i < n; ++i) m(i, j) /= s;
      worst = std::max(worst, std::abs(s - 1.0));
    }
    if (worst < tol) break;
  }
  return m;
}

}  // namespace lorentz

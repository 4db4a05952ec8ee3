#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace lorentz {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

using Rng = std::mt19937_64;

// Parses "p/q", "p", or an exact decimal such as "-1.25e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
// Shortest decimal that round-trips to the same double.
std::string to_string(double value);

inline double to_double(double value) { return value; }
inline double to_double(const Rational& value) { return value.convert_to<double>(); }

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double from_double(double v) { return v; }
  static double parse(std::string_view text) { return to_double(parse_rational(text)); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational from_double(double v) { return Rational(v); }
  static Rational parse(std::string_view text) { return parse_rational(text); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

// Exact equality in rational mode; |a-b| <= rel * max(1,|a|,|b|) in float mode.
template <class T>
bool nearly_equal(const T& a, const T& b, double rel = 1e-9) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel * scale;
  }
}

// Number of worker threads, capped by LORENTZ_THREADS when set.
std::size_t thread_budget();

}  // namespace lorentz

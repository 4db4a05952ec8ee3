#include "lorentz/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <thread>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

BigInt parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("malformed integer: '" + std::string(s) + "'");
  const auto nz = s.find_first_not_of('0');  // no octal reading of "010"
  BigInt v{nz == std::string_view::npos ? std::string("0") : std::string(s.substr(nz))};
  return neg ? BigInt(-v) : v;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw DomainError("empty rational literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(trim(s.substr(0, slash)));
    const BigInt den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    if (!es.empty() && es.front() == '+') es.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(es.data(), es.data() + es.size(), exponent);
    if (ec != std::errc() || ptr != es.data() + es.size())
      throw DomainError("malformed exponent in '" + std::string(text) + "'");
    s = s.substr(0, epos);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw DomainError("malformed decimal '" + std::string(text) + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long long>(frac.size());
  } else {
    if (!all_digits(s)) throw DomainError("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  if (exponent > 100000 || exponent < -100000) throw DomainError("exponent out of range");
  // GMP treats a leading 0 as an octal prefix.
  const auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  Rational value{BigInt{digits}};
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return neg ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.str(); }

std::string to_string(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericalError("failed to format double");
  return std::string(buf, ptr);
}

std::size_t thread_budget() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LORENTZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
  }
  return hw;
}

}  // namespace lorentz

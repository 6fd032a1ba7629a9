#pragma once

// Number backends shared by every algorithm in the library.
//
// Algorithms are templates over a `Real` satisfying `RealNumber`. Four
// backends are provided:
//   double        binary64, digits10 = 15
//   Float<D>      software binary float with D significant decimal digits
//                 (Extended = Float<19>, the default for digit tables)
//   Rational      exact arbitrary-precision rational, the oracle backend

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

#include "accelseries/errors.hpp"

namespace accel {

namespace bmp = boost::multiprecision;

template <unsigned Digits10>
using Float = bmp::number<bmp::cpp_bin_float<Digits10>, bmp::et_off>;

using Extended = Float<19>;
using Float30 = Float<30>;
using Float50 = Float<50>;
using Float100 = Float<100>;
using Rational = bmp::cpp_rational;
using BigInt = bmp::cpp_int;

template <class T>
struct number_traits;

template <>
struct number_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr int digits10 = 15;
  static constexpr const char* name = "binary64";
};

template <unsigned D>
struct number_traits<Float<D>> {
  static constexpr bool is_exact = false;
  static constexpr int digits10 = static_cast<int>(D);
  static constexpr const char* name = "extended";
};

template <>
struct number_traits<Rational> {
  static constexpr bool is_exact = true;
  // Nominal cap used when reporting digit counts of exact results.
  static constexpr int digits10 = 100;
  static constexpr const char* name = "rational";
};

template <class T>
concept RealNumber = requires(T a, T b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  T(1);
  number_traits<T>::is_exact;
};

template <class Real>
inline constexpr bool is_exact_v = number_traits<Real>::is_exact;

template <class Real>
inline constexpr int digits10_v = number_traits<Real>::digits10;

template <RealNumber Real>
Real abs_value(const Real& x) {
  return x < Real(0) ? Real(-x) : x;
}

template <RealNumber Real>
Real pow_int(Real base, long long e) {
  if (e < 0) return Real(1) / pow_int(base, -e);
  Real out(1);
  while (e) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

template <RealNumber Real>
Real from_int(long long v) {
  return Real(v);
}

template <RealNumber Real>
bool is_finite(const Real& x) {
  if constexpr (is_exact_v<Real>) {
    return true;
  } else {
    using std::isfinite;
    return isfinite(x);
  }
}

namespace detail {

struct DecimalParts {
  bool negative = false;
  std::string digits;  // integer and fraction digits, concatenated
  long long exponent = 0;  // value = digits * 10^exponent
};

inline DecimalParts split_decimal(std::string_view text) {
  std::size_t i = 0;
  const auto fail = [&] { throw ParseError("malformed decimal '" + std::string(text) + "'"); };
  DecimalParts parts;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    parts.negative = text[i] == '-';
    ++i;
  }
  std::size_t int_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    parts.digits += text[i++];
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      parts.digits += text[i++];
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) fail();
  long long exp10 = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i == text.size()) fail();
    const char* first = text.data() + i;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, exp10);
    if (ec != std::errc() || ptr != last) fail();
    if (neg) exp10 = -exp10;
    i = text.size();
  }
  if (i != text.size()) fail();
  parts.exponent = exp10 - static_cast<long long>(frac_digits);
  // A leading zero would make integer parsers read the digits as octal.
  const auto nz = parts.digits.find_first_not_of('0');
  parts.digits.erase(0, nz == std::string::npos ? parts.digits.size() - 1 : nz);
  return parts;
}

}  // namespace detail

/// Parses optional sign, digits, optional fraction and optional exponent into
/// the nearest value of `Real`. Exact for the rational backend.
template <RealNumber Real>
Real parse_decimal(std::string_view text) {
  const auto parts = detail::split_decimal(text);
  if constexpr (std::is_same_v<Real, Rational>) {
    BigInt mant(parts.digits);
    Rational out(mant);
    if (parts.exponent > 0) {
      out *= Rational(bmp::pow(BigInt(10), static_cast<unsigned>(parts.exponent)));
    } else if (parts.exponent < 0) {
      out /= Rational(bmp::pow(BigInt(10), static_cast<unsigned>(-parts.exponent)));
    }
    return parts.negative ? Real(-out) : out;
  } else if constexpr (std::is_same_v<Real, double>) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + (text.front() == '+' ? 1 : 0),
                                     text.data() + text.size(), v);
    if (ec != std::errc() && ec != std::errc::result_out_of_range)
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    (void)ptr;
    return v;
  } else {
    std::string normalized = (parts.negative ? "-" : "") + parts.digits + "e" +
                             std::to_string(parts.exponent);
    return Real(normalized);
  }
}

/// Decimal rendering with `significant` digits (default: backend digits10).
/// Rationals print exactly as "p/q" (or "p" when integral).
template <RealNumber Real>
std::string format_number(const Real& x, int significant = digits10_v<Real>) {
  if constexpr (is_exact_v<Real>) {
    std::ostringstream os;
    os << bmp::numerator(x);
    if (bmp::denominator(x) != 1) os << '/' << bmp::denominator(x);
    return os.str();
  } else {
    std::ostringstream os;
    os.precision(significant);
    os << x;
    return os.str();
  }
}

/// log10 |x| as a double; -infinity for zero.
template <RealNumber Real>
double log10_abs(const Real& x) {
  if (x == Real(0)) return -std::numeric_limits<double>::infinity();
  if constexpr (std::is_same_v<Real, double>) {
    return std::log10(std::abs(x));
  } else if constexpr (is_exact_v<Real>) {
    Float50 f(x);
    return static_cast<double>(bmp::log10(bmp::abs(f)));
  } else {
    return static_cast<double>(bmp::log10(bmp::abs(x)));
  }
}

template <RealNumber Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// |approx/reference - 1|. Throws ZeroReferenceError for a zero reference.
template <RealNumber Real>
Real rel_error(const Real& approx, const Real& reference) {
  if (reference == Real(0)) throw ZeroReferenceError();
  return abs_value(Real(approx / reference - Real(1)));
}

/// Transcendental helpers; only meaningful for floating backends.
template <RealNumber Real>
  requires(!is_exact_v<Real>)
struct math {
  static Real pi() {
    if constexpr (std::is_same_v<Real, double>) return boost::math::constants::pi<double>();
    else return boost::math::constants::pi<Real>();
  }
  static Real e() {
    if constexpr (std::is_same_v<Real, double>) return boost::math::constants::e<double>();
    else return boost::math::constants::e<Real>();
  }
  static Real sqrt(const Real& x) {
    using std::sqrt;
    return sqrt(x);
  }
  static Real cbrt(const Real& x) {
    using std::cbrt;
    return cbrt(x);
  }
  static Real log(const Real& x) {
    using std::log;
    return log(x);
  }
  static Real sinh(const Real& x) {
    using std::sinh;
    return sinh(x);
  }
  static Real pow(const Real& x, const Real& y) {
    using std::pow;
    return pow(x, y);
  }
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
};

}  // namespace accel

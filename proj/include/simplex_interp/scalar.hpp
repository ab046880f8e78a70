#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "simplex_interp/errors.hpp"

namespace simplex_interp {

// Expression templates off: values behave like plain arithmetic types.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <class T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

template <class T>
using Point = std::vector<T>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

// The boost rational constructor rejects negative denominators.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational ratio(long long p, long long q) { return make_rational(BigInt(p), BigInt(q)); }

template <Scalar T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

template <Scalar T>
Point<double> to_double(const Point<T>& p) {
  Point<double> out;
  out.reserve(p.size());
  for (const auto& v : p) out.push_back(to_double(v));
  return out;
}

// "p/q", integers, and decimals with optional exponent all parse exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw ParseError("not a rational number: '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) fail();
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) fail();
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
    // A leading zero would make the BigInt constructor read octal.
    const auto body = s.substr(start);
    const auto nz = body.find_first_not_of('0');
    BigInt v(nz == std::string_view::npos ? std::string("0") : std::string(body.substr(nz)));
    return s.front() == '-' ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return make_rational(parse_int(text.substr(0, slash)), den);
  }

  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<long long>(parse_int(text.substr(e + 1)));
    text = text.substr(0, e);
  }
  bool negative = !text.empty() && text.front() == '-';
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  std::string digits;
  bool seen_point = false;
  for (char ch : text) {
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) --exponent;
    } else {
      fail();
    }
  }
  if (digits.empty()) fail();
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value{BigInt(digits)};
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
  value = exponent >= 0 ? Rational(value * scale) : Rational(value / scale);
  return negative ? Rational(-value) : value;
}

inline std::string format_rational(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <Scalar T>
std::string format_scalar(const T& x) {
  if constexpr (is_exact_v<T>)
    return format_rational(x);
  else
    return format_decimal(x);
}

// a + b*sqrt(d) with d squarefree; d == 1 only when b == 0.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  explicit QuadraticSurd(Rational a) : a_(std::move(a)) {}

  static QuadraticSurd make(Rational a, Rational b, std::uint64_t radicand) {
    QuadraticSurd s;
    if (radicand == 0 || b == 0) {
      s.a_ = std::move(a);
      return s;
    }
    std::uint64_t square = 1, rest = radicand;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
      while (rest % (p * p) == 0) {
        rest /= p * p;
        square *= p;
      }
    }
    b *= Rational(square);
    if (rest == 1) {
      s.a_ = a + b;
      return s;
    }
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.d_ = rest;
    return s;
  }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  std::uint64_t radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(a_.convert_to<long double>()) +
                               b_.convert_to<long double>() * std::sqrt(static_cast<long double>(d_)));
  }

  std::string str() const {
    if (is_rational()) return format_rational(a_);
    std::string out;
    if (a_ != 0) out = format_rational(a_) + " + ";
    if (b_ != 1) out += format_rational(b_) + "*";
    return out + "sqrt(" + std::to_string(d_) + ")";
  }

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  Rational a_{0};
  Rational b_{0};
  std::uint64_t d_ = 1;
};

inline std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

inline bool is_perfect_square(std::uint64_t x) {
  auto r = isqrt(x);
  return r * r == x;
}

}  // namespace simplex_interp

#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace altbc {

/// Exact rational number on 64-bit numerator/denominator.
///
/// The denominator is kept strictly positive and the fraction is always
/// gcd-reduced, so two equal values have identical representations.
/// All arithmetic goes through 128-bit intermediates and throws
/// std::overflow_error if a reduced result no longer fits in 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from_i128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = i128(a.num_) * b.den_;
    __int128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Renders as "n" for integers, "n/d" otherwise.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  /// Parses "n" or "n/d" with an optional leading sign.
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

  static Rational from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a != 0) {
      n /= a;
      d /= a;
    }
    constexpr __int128 kMax = INT64_MAX;
    constexpr __int128 kMin = INT64_MIN;
    if (n > kMax || n < kMin || d > kMax) throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = from_i128(i128(n), i128(d)); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
  };
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) fail();

  auto read_int = [&](std::string_view part) -> std::int64_t {
    if (part.empty()) fail();
    bool neg = false;
    std::size_t i = 0;
    if (part[0] == '+' || part[0] == '-') {
      neg = part[0] == '-';
      i = 1;
    }
    if (i == part.size()) fail();
    __int128 v = 0;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') fail();
      v = v * 10 + (part[i] - '0');
      if (v > static_cast<__int128>(INT64_MAX)) throw std::overflow_error("Rational: parse overflow");
    }
    return static_cast<std::int64_t>(neg ? -v : v);
  };

  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(read_int(s));
  return Rational(read_int(s.substr(0, slash)), read_int(s.substr(slash + 1)));
}

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace altbc

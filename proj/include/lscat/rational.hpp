#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "lscat/errors.hpp"

namespace lscat {

// Exact rational value. Level comparisons in the dynamics are all exact;
// there is no tolerance anywhere. Denominator is kept positive and the
// fraction reduced. Magnitudes stay tiny at this scale, so int64 is plenty.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw ParseError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num) * b.den;
    __int128 r = static_cast<__int128>(b.num) * a.den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }

  static Rational midpoint(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, 2 * a.den * b.den);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "p" or "p/q", optionally negative.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        std::int64_t n = std::stoll(s, &used);
        if (used != s.size()) throw ParseError("bad rational literal '" + s + "'");
        return Rational(n);
      }
      std::int64_t n = std::stoll(s.substr(0, slash), &used);
      if (used != slash) throw ParseError("bad rational literal '" + s + "'");
      std::int64_t d = std::stoll(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) throw ParseError("bad rational literal '" + s + "'");
      return Rational(n, d);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational literal '" + s + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("rational literal out of range '" + s + "'");
    }
  }
};

}  // namespace lscat

#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {

// Exact rational on int64 with __int128 intermediates. All coefficient
// arithmetic in the project goes through this type; overflow throws instead
// of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) {
    num_ = n;
    den_ = d;
    normalize();
  }

  static Rational parse(const std::string& s) {
    std::size_t slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw input_error("bad rational literal: " + s);
    }
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_nonneg() const { return num_ >= 0; }

  // denominator prime to p
  bool is_p_local(long long p) const { return den_ % p != 0; }

  long long as_integer() const {
    if (den_ != 1) throw defect_error("expected integer, got " + str());
    return num_;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                (__int128)a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                (__int128)a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw defect_error("rational division by zero");
    return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  Rational pow(long long e) const {
    if (e < 0) return (Rational(1) / *this).pow(-e);
    Rational r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b = (e >>= 1) ? b * b : b;
    }
    return r;
  }

 private:
  static Rational make(__int128 n, __int128 d) {
    if (d == 0) throw defect_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
  static long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw defect_error("rational overflow");
    return (long long)v;
  }
  void normalize() { *this = make(num_, den_); }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace hecke

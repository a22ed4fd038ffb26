#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "lagtor/errors.hpp"

namespace lagtor {

// Exact rational arithmetic on 64-bit words. All quantities in this
// project (lattice entries, interval endpoints, path states) stay far
// below the word size; overflow aborts loudly instead of wrapping.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                    checked(i128(a.den_) * b.den_), already_reduced{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.num_),
                    checked(i128(a.den_) * b.den_), already_reduced{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InternalError("rational division by zero");
    return Rational(checked(i128(a.num_) * b.den_),
                    checked(i128(a.den_) * b.num_), already_reduced{});
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    i128 l = i128(a.num_) * b.den_;
    i128 r = i128(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // Largest integer <= value.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  double to_double() const { return double(num_) / double(den_); }

  // "p" for integers, "p/q" otherwise.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Accepts "p", "p/q" and plain decimals like "6.5" or "-0.25".
  static Rational parse(const std::string& s);

private:
  using i128 = __int128;
  struct already_reduced {};

  Rational(long long n, long long d, already_reduced) : num_(n), den_(d) {
    normalize();
  }

  static long long checked(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
      throw InternalError("rational overflow");
    return (long long)v;
  }

  void normalize() {
    if (den_ == 0) throw InternalError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_, den_;
};

inline Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  auto slash = s.find('/');
  auto dot = s.find('.');
  try {
    if (slash != std::string::npos) {
      long long n = std::stoll(s.substr(0, slash));
      long long d = std::stoll(s.substr(slash + 1));
      if (d == 0) throw InputError("rational with zero denominator: " + s);
      return Rational(n, d);
    }
    if (dot != std::string::npos) {
      std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
      if (fp.empty()) return Rational(std::stoll(ip));
      bool neg = !ip.empty() && ip[0] == '-';
      long long whole = ip.empty() || ip == "-" ? 0 : std::stoll(ip);
      long long den = 1;
      for (size_t i = 0; i < fp.size(); ++i) {
        if (fp[i] < '0' || fp[i] > '9')
          throw InputError("bad decimal literal: " + s);
        den *= 10;
        if (den > 1000000000000000000LL)
          throw InputError("decimal literal too long: " + s);
      }
      long long frac = std::stoll(fp);
      return Rational(whole) +
             (neg ? -Rational(frac, den) : Rational(frac, den));
    }
    return Rational(std::stoll(s));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("bad rational literal: " + s);
  }
}

// Closed rational interval [lo, hi].
struct RatInterval {
  Rational lo, hi;
  bool contains_zero() const {
    return lo.sign() <= 0 && hi.sign() >= 0;
  }
  RatInterval operator+(const RatInterval& o) const {
    return {lo + o.lo, hi + o.hi};
  }
  // Scale by an exact rational.
  RatInterval scaled(const Rational& c) const {
    if (c.sign() >= 0) return {lo * c, hi * c};
    return {hi * c, lo * c};
  }
};

}  // namespace lagtor

#pragma once

#include <cstdint>
#include <cstdlib>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "blotto/errors.hpp"

namespace blotto {

// Exact rational on int64 numerator/denominator. Comparisons and arithmetic
// go through 128-bit intermediates; results that do not fit back into int64
// after reduction throw std::overflow_error (callers fall back to doubles).
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(long long n, long long d) : num_(n), den_(d) {
    if (d == 0) throw ParseError("rational with zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Parses "p/q" or a plain integer. Returns nullopt on malformed input.
  static std::optional<Rat> parse(const std::string& s);

  // Snaps a double to a nearby small-denominator rational via continued
  // fractions. Succeeds only when |p/q - x| <= tol * max(1, |x|); doubles
  // that are not (close to) simple fractions stay on the floating path.
  static std::optional<Rat> from_double(double x, long long max_den = 1000,
                                        double tol = 1e-12);

  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make_reduced(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.num_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make_reduced(n, d);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    __int128 n = (__int128)a.num_ * b.den_;
    __int128 d = (__int128)a.den_ * b.num_;
    return make_reduced(n, d);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat abs() const { return num_ < 0 ? -*this : *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

 private:
  static Rat make_reduced(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
      throw std::overflow_error("rational overflow");
    }
    Rat r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_;
  long long den_;
};

inline std::optional<Rat> Rat::parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      long long n = std::stoll(s, &used);
      if (used != s.size()) return std::nullopt;
      return Rat(n);
    }
    long long n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) return std::nullopt;
    std::string dpart = s.substr(slash + 1);
    long long d = std::stoll(dpart, &used);
    if (used != dpart.size() || d == 0) return std::nullopt;
    return Rat(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::optional<Rat> Rat::from_double(double x, long long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  if (std::abs(x) > 1e15) return std::nullopt;
  // Continued-fraction convergents of x.
  double frac = x;
  long long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents p/q
  for (int iter = 0; iter < 64; ++iter) {
    double a_f = std::floor(frac);
    long long a = static_cast<long long>(a_f);
    long long p2 = a * p0 + p1;
    long long q2 = a * q0 + q1;
    if (q2 > max_den || q2 < 0) break;
    p1 = p0;
    q1 = q0;
    p0 = p2;
    q0 = q2;
    double approx = static_cast<double>(p0) / static_cast<double>(q0);
    if (std::abs(approx - x) <= tol * std::max(1.0, std::abs(x))) {
      return Rat(p0, q0);
    }
    double rem = frac - a_f;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return std::nullopt;
}

// A numeric value carried in both double and (when available) exact rational
// form. All model quantities (biases, weights, unlabeled cost) are Scalars;
// the exact side drives tie-free stability comparisons.
struct Scalar {
  double value = 0.0;
  std::optional<Rat> exact;

  Scalar() = default;
  Scalar(double v) : value(v), exact(Rat::from_double(v)) {}  // NOLINT
  Scalar(int v) : value(v), exact(Rat(v)) {}                  // NOLINT
  Scalar(long long v) : value(static_cast<double>(v)), exact(Rat(v)) {}  // NOLINT
  Scalar(const Rat& r) : value(r.to_double()), exact(r) {}    // NOLINT

  // Parses a number or a "p/q" rational string.
  static Scalar parse(const std::string& s) {
    if (auto r = Rat::parse(s)) return Scalar(*r);
    try {
      size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size()) return Scalar(v);
    } catch (const std::exception&) {
    }
    throw ParseError("not a number or p/q rational: '" + s + "'");
  }
};

}  // namespace blotto

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nds {

// Arbitrary-precision integer used for schedule indices; these reach values
// like 2^(36^2) in the far-horizon diagnostics, so a fixed-width type is out.
using Integer = mpz_class;

// Exact rational number.  Thin wrapper over GMP's mpq_class that owns the
// project-wide "p/q" text format and the few numeric helpers the domain code
// needs.  Always canonical (lowest terms, positive denominator).
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(runtime/explicit)
  Rational(long n) : v_(static_cast<long>(n)) {}  // NOLINT(runtime/explicit)
  Rational(long long n);                    // NOLINT(runtime/explicit)
  Rational(long long num, long long den);
  explicit Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { canon(); }

  // Parses "p/q" or "p" (optional leading '-'); rejects everything else,
  // including whitespace, empty strings and zero denominators.
  static Rational parse(std::string_view text);

  // Canonical text form: "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  double to_double() const;

  const mpq_class& raw() const { return v_; }
  Integer numerator() const { return v_.get_num(); }
  Integer denominator() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Integer floor() const;
  Integer ceil() const;
  Rational abs() const;

  // 2^k for possibly negative k.
  static Rational pow2(long k);

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void canon() { v_.canonicalize(); }
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace nds

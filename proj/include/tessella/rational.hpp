#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tessella/bigint.hpp"

namespace tessella {

// Exact rational number, always reduced, denominator > 0.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(BigInt n, BigInt d);

  // "a/b" or plain "a"
  static Rational from_string(std::string_view s);
  std::string to_string() const;
  double to_double() const { return num_.to_double() / den_.to_double(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  static int cmp(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

  // Exact square root if this is a perfect square of a rational.
  std::optional<Rational> sqrt() const;
  Rational pow(int e) const;

  size_t hash() const { return num_.hash() * 1000003u + den_.hash(); }

 private:
  BigInt num_, den_;
};

}  // namespace tessella

#include "tessella/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace tessella {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  if (den_ == BigInt(1)) return;
  if (num_.fits_int64() && den_.fits_int64()) {
    unsigned long long a = num_.sign() < 0 ? -static_cast<unsigned long long>(num_.as_int64())
                                           : static_cast<unsigned long long>(num_.as_int64());
    unsigned long long g = std::gcd(a, static_cast<unsigned long long>(den_.as_int64()));
    if (g > 1) {
      num_ = BigInt(num_.as_int64() / static_cast<long long>(g));
      den_ = BigInt(den_.as_int64() / static_cast<long long>(g));
    }
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::from_string(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(BigInt::from_string(s), BigInt(1));
  return Rational(BigInt::from_string(s.substr(0, slash)),
                  BigInt::from_string(s.substr(slash + 1)));
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(den_, num_);
}

int Rational::cmp(const Rational& a, const Rational& b) {
  if (a.num_.fits_int64() && a.den_.fits_int64() && b.num_.fits_int64() && b.den_.fits_int64()) {
    __int128 lhs = static_cast<__int128>(a.num_.as_int64()) * b.den_.as_int64();
    __int128 rhs = static_cast<__int128>(b.num_.as_int64()) * a.den_.as_int64();
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

std::optional<Rational> Rational::sqrt() const {
  if (sign() < 0) return std::nullopt;
  BigInt rn = BigInt::isqrt(num_);
  if (rn * rn != num_) return std::nullopt;
  BigInt rd = BigInt::isqrt(den_);
  if (rd * rd != den_) return std::nullopt;
  return Rational(rn, rd);
}

Rational Rational::pow(int e) const {
  if (e == 0) return Rational(1);
  Rational base = e < 0 ? inverse() : *this;
  unsigned k = e < 0 ? static_cast<unsigned>(-static_cast<long long>(e))
                     : static_cast<unsigned>(e);
  Rational r(1);
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

}  // namespace tessella

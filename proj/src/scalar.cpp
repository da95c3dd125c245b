#include "tessella/scalar.hpp"

#include <atomic>
#include <cmath>

namespace tessella {

namespace {
std::atomic<double> g_epsilon{1e-9};
}

double geom_epsilon() { return g_epsilon.load(std::memory_order_relaxed); }
void set_geom_epsilon(double eps) { g_epsilon.store(eps, std::memory_order_relaxed); }

bool is_square_free(int d) {
  if (d < 1) return false;
  for (int p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Scalar Scalar::exact_rat(Rational a) {
  Scalar s;
  s.mode_ = Mode::exact;
  s.d_ = 1;
  s.a_ = std::move(a);
  return s;
}

Scalar Scalar::exact(Rational a, Rational b, int d) {
  if (d == 1 || b.is_zero()) {
    // canonical: fold sqrt(1) into the rational part, drop unused radicand
    if (d == 1) a = a + b;
    return exact_rat(std::move(a));
  }
  if (!is_square_free(d)) fail(Errc::unsupported_radicand, "radicand must be square-free and positive: " + std::to_string(d));
  Scalar s;
  s.mode_ = Mode::exact;
  s.d_ = d;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  return s;
}

Scalar Scalar::approx(double v) {
  Scalar s;
  s.mode_ = Mode::approx;
  s.v_ = v;
  return s;
}

double Scalar::to_double() const {
  if (mode_ == Mode::approx) return v_;
  double r = a_.to_double();
  if (!b_.is_zero()) r += b_.to_double() * std::sqrt(static_cast<double>(d_));
  return r;
}

void Scalar::check_compatible(const Scalar& x, const Scalar& y) {
  if (x.mode_ != y.mode_) fail(Errc::mode_mismatch, "mixed exact/approx scalar operands");
  if (x.mode_ == Mode::exact && x.d_ != y.d_ && !x.b_.is_zero() && !y.b_.is_zero()) {
    fail(Errc::mode_mismatch, "scalars from different quadratic fields: sqrt(" +
                                  std::to_string(x.d_) + ") vs sqrt(" + std::to_string(y.d_) + ")");
  }
}

int Scalar::merged_radicand(const Scalar& x, const Scalar& y) {
  if (!x.b_.is_zero()) return x.d_;
  return y.d_;
}

int Scalar::sign() const {
  if (mode_ == Mode::approx) {
    double eps = geom_epsilon();
    if (v_ > eps) return 1;
    if (v_ < -eps) return -1;
    return 0;
  }
  int sa = a_.sign(), sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(d) pull in opposite directions: compare a^2 against d*b^2
  int c = Rational::cmp(a_ * a_, b_ * b_ * Rational(d_));
  if (c == 0) return 0;  // cannot happen for square-free d > 1, kept for safety
  return c > 0 ? sa : sb;
}

bool Scalar::is_zero() const { return sign() == 0; }

Scalar operator+(const Scalar& x, const Scalar& y) {
  Scalar::check_compatible(x, y);
  if (x.mode_ == Mode::approx) return Scalar::approx(x.v_ + y.v_);
  return Scalar::exact(x.a_ + y.a_, x.b_ + y.b_, Scalar::merged_radicand(x, y));
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  Scalar::check_compatible(x, y);
  if (x.mode_ == Mode::approx) return Scalar::approx(x.v_ - y.v_);
  return Scalar::exact(x.a_ - y.a_, x.b_ - y.b_, Scalar::merged_radicand(x, y));
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  Scalar::check_compatible(x, y);
  if (x.mode_ == Mode::approx) return Scalar::approx(x.v_ * y.v_);
  bool xb = x.b_.is_zero(), yb = y.b_.is_zero();
  if (xb && yb) return Scalar::exact_rat(x.a_ * y.a_);
  int d = Scalar::merged_radicand(x, y);
  // (a + b sqrt d)(c + e sqrt d) = ac + be d + (ae + bc) sqrt d
  if (xb) return Scalar::exact(x.a_ * y.a_, x.a_ * y.b_, d);
  if (yb) return Scalar::exact(x.a_ * y.a_, x.b_ * y.a_, d);
  Rational rat = x.a_ * y.a_ + x.b_ * y.b_ * Rational(d);
  Rational irr = x.a_ * y.b_ + x.b_ * y.a_;
  return Scalar::exact(std::move(rat), std::move(irr), d);
}

Scalar Scalar::inverse() const {
  if (mode_ == Mode::approx) {
    if (v_ == 0.0) fail(Errc::degenerate_geometry, "inverse of zero scalar");
    return approx(1.0 / v_);
  }
  if (is_zero()) fail(Errc::degenerate_geometry, "inverse of zero scalar");
  if (b_.is_zero()) return exact_rat(a_.inverse());
  // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - d b^2)
  Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  return exact(a_ / norm, -(b_ / norm), d_);
}

Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

Scalar Scalar::operator-() const {
  if (mode_ == Mode::approx) return approx(-v_);
  return exact(-a_, -b_, d_);
}

int Scalar::cmp(const Scalar& x, const Scalar& y) {
  check_compatible(x, y);
  if (x.mode_ == Mode::approx) {
    double eps = geom_epsilon();
    if (std::abs(x.v_ - y.v_) <= eps) return 0;
    return x.v_ < y.v_ ? -1 : 1;
  }
  if (x.d_ == y.d_ || x.b_.is_zero() || y.b_.is_zero()) {
    return (x - y).sign();
  }
  return (x - y).sign();
}

int Scalar::cmp_strict(const Scalar& x, const Scalar& y) {
  if (x.mode_ != y.mode_) return x.mode_ == Mode::exact ? -1 : 1;
  if (x.mode_ == Mode::approx) {
    if (x.v_ < y.v_) return -1;
    if (x.v_ > y.v_) return 1;
    return 0;
  }
  // componentwise fast paths keep sorting off the allocation-heavy route
  int cb = Rational::cmp(x.b_, y.b_);
  if (cb == 0) return Rational::cmp(x.a_, y.a_);
  int ca = Rational::cmp(x.a_, y.a_);
  if (ca == cb) return ca;
  if (ca == 0) return cb;
  return (x - y).sign();
}

std::optional<Scalar> Scalar::exact_sqrt(int ambient_radicand) const {
  if (mode_ == Mode::approx) {
    if (v_ < 0) return std::nullopt;
    return approx(std::sqrt(v_));
  }
  if (sign() < 0) return std::nullopt;
  if (b_.is_zero()) {
    if (auto r = a_.sqrt()) return exact_rat(*r);
    // sqrt(a) = sqrt(a/d) * sqrt(d) when a/d is a perfect square
    for (int dd : {d_, ambient_radicand}) {
      if (dd > 1) {
        if (auto r = (a_ / Rational(dd)).sqrt()) return exact(Rational(0), *r, dd);
      }
    }
    return std::nullopt;
  }
  // (x + y sqrt d)^2 = x^2 + d y^2 + 2xy sqrt d; solve for x^2 from a quadratic
  Rational disc = a_ * a_ - b_ * b_ * Rational(d_);
  auto sq = disc.sqrt();
  if (!sq) return std::nullopt;
  for (int s : {1, -1}) {
    Rational x2 = (a_ + (s > 0 ? *sq : -*sq)) / Rational(2);
    if (x2.sign() < 0) continue;
    auto x = x2.sqrt();
    if (!x) continue;
    if (x->is_zero()) continue;
    Rational y = b_ / (Rational(2) * *x);
    Scalar cand = exact(*x, y, d_);
    if ((cand * cand - *this).is_zero() && cand.sign() >= 0) return cand;
    Scalar neg = -cand;
    if ((neg * neg - *this).is_zero() && neg.sign() >= 0) return neg;
  }
  return std::nullopt;
}

Scalar Scalar::pow(int e) const {
  Scalar r = one_like(*this);
  if (e == 0) return r;
  Scalar base = e < 0 ? inverse() : *this;
  unsigned k = e < 0 ? static_cast<unsigned>(-static_cast<long long>(e)) : static_cast<unsigned>(e);
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

std::string Scalar::to_string() const {
  if (mode_ == Mode::approx) return std::to_string(v_);
  if (b_.is_zero()) return a_.to_string();
  return a_.to_string() + " + (" + b_.to_string() + ")*sqrt(" + std::to_string(d_) + ")";
}

size_t Scalar::hash() const {
  if (mode_ == Mode::approx) {
    return std::hash<double>{}(v_);
  }
  size_t h = a_.hash();
  h = h * 1000003u + b_.hash();
  h = h * 1000003u + static_cast<size_t>(d_);
  return h;
}

}  // namespace tessella

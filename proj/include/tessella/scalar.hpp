#pragma once

#include <optional>
#include <string>

#include "tessella/errors.hpp"
#include "tessella/rational.hpp"

namespace tessella {

enum class Mode : uint8_t { exact, approx };

// Global comparison tolerance for approx-mode scalars (epsilon_geom).
double geom_epsilon();
void set_geom_epsilon(double eps);

// A plane coordinate. Exact mode holds a + b*sqrt(d) with rational a, b and a
// square-free radicand d; the representation is canonical (d == 1 forces
// b == 0), so structural equality is value equality. Approx mode holds a
// double compared up to the global tolerance.
class Scalar {
 public:
  Scalar() = default;  // exact zero

  static Scalar exact_rat(Rational a);
  static Scalar exact(Rational a, Rational b, int d);
  static Scalar approx(double v);
  static Scalar zero_like(const Scalar& s) { return s.is_exact() ? exact_rat(Rational(0)) : approx(0.0); }
  static Scalar one_like(const Scalar& s) { return s.is_exact() ? exact_rat(Rational(1)) : approx(1.0); }

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }
  int radicand() const { return d_; }
  const Rational& rat_part() const { return a_; }
  const Rational& irr_part() const { return b_; }
  double approx_value() const { return v_; }

  double to_double() const;
  bool is_zero() const;
  int sign() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar operator-() const;
  Scalar inverse() const;

  // Total order on values; approx compares collapse within epsilon_geom.
  static int cmp(const Scalar& x, const Scalar& y);
  friend bool operator==(const Scalar& x, const Scalar& y) { return cmp(x, y) == 0; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return cmp(x, y) != 0; }
  friend bool operator<(const Scalar& x, const Scalar& y) { return cmp(x, y) < 0; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return cmp(x, y) <= 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return cmp(x, y) > 0; }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return cmp(x, y) >= 0; }

  // Strict structural comparison (no epsilon), used for canonical ordering.
  static int cmp_strict(const Scalar& x, const Scalar& y);

  // Square root within the quadratic field, or nullopt. Pure rationals carry
  // radicand 1, so callers working in Q(sqrt D) pass their ambient D to allow
  // roots of the form (rational) * sqrt(D).
  std::optional<Scalar> exact_sqrt(int ambient_radicand = 0) const;
  Scalar pow(int e) const;

  std::string to_string() const;  // human-readable, exact when exact
  size_t hash() const;

 private:
  Mode mode_ = Mode::exact;
  int d_ = 1;
  Rational a_, b_;
  double v_ = 0.0;

  static void check_compatible(const Scalar& x, const Scalar& y);
  static int merged_radicand(const Scalar& x, const Scalar& y);
};

bool is_square_free(int d);

}  // namespace tessella

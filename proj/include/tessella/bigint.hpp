#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tessella {

// Arbitrary-precision signed integer. Values with magnitude below 2^62 live
// inline; larger values spill to heap-allocated sign/magnitude storage. All
// coordinate arithmetic in the engine runs through this type, so the inline
// path is the one that matters for speed.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design
  BigInt(int v) : BigInt(static_cast<long long>(v)) {}

  BigInt(const BigInt& o);
  BigInt(BigInt&& o) noexcept;
  BigInt& operator=(const BigInt& o);
  BigInt& operator=(BigInt&& o) noexcept;
  ~BigInt();

  static BigInt from_string(std::string_view s);  // decimal, optional sign
  std::string to_string() const;
  double to_double() const;

  bool is_zero() const { return big_ == nullptr && small_ == 0; }
  int sign() const;
  bool fits_int64() const { return big_ == nullptr; }
  long long as_int64() const { return small_; }  // valid when fits_int64()

  BigInt operator-() const;
  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncating division (C semantics): a == q*b + r, |r| < |b|, sign(r)==sign(a).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);

  static int cmp(const BigInt& a, const BigInt& b);
  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

  static BigInt gcd(BigInt a, BigInt b);          // non-negative result
  static BigInt pow(const BigInt& base, unsigned e);
  static BigInt isqrt(const BigInt& n);           // floor sqrt, n >= 0
  BigInt abs() const;

  size_t hash() const;

 private:
  struct Big {
    int sign = 0;                 // +1 or -1 (never 0 in big mode)
    std::vector<uint32_t> mag;   // little-endian base 2^32, no leading zeros
  };

  static constexpr long long kSmallMax = (1LL << 62);

  long long small_ = 0;
  Big* big_ = nullptr;

  explicit BigInt(Big* b) : big_(b) {}
  static BigInt from_i128(__int128 v);
  __int128 as_i128_if_small() const { return small_; }
  void to_mag(std::vector<uint32_t>& out, int& sign) const;
  static BigInt from_mag(std::vector<uint32_t> mag, int sign);
  void normalize();
};

}  // namespace tessella

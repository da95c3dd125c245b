#include "tessella/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tessella {

namespace {

int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  const auto& lo = a.size() < b.size() ? a : b;
  const auto& hi = a.size() < b.size() ? b : a;
  std::vector<uint32_t> r(hi.size() + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < hi.size(); ++i) {
    uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
    r[i] = static_cast<uint32_t>(s);
    carry = s >> 32;
  }
  r[hi.size()] = static_cast<uint32_t>(carry);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// requires |a| >= |b|
std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r(a.size(), 0);
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
    if (s < 0) {
      s += (1LL << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<uint32_t>(s);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = r[i + j] + static_cast<uint64_t>(a[i]) * b[j] + carry;
      r[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

size_t bit_length(const std::vector<uint32_t>& m) {
  if (m.empty()) return 0;
  size_t bits = (m.size() - 1) * 32;
  uint32_t top = m.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool get_bit(const std::vector<uint32_t>& m, size_t i) {
  size_t w = i / 32;
  if (w >= m.size()) return false;
  return (m[w] >> (i % 32)) & 1u;
}

void shl1_add_bit(std::vector<uint32_t>& m, bool bit) {
  uint32_t carry = bit ? 1u : 0u;
  for (auto& w : m) {
    uint32_t nc = w >> 31;
    w = (w << 1) | carry;
    carry = nc;
  }
  if (carry) m.push_back(carry);
  while (!m.empty() && m.back() == 0) m.pop_back();
}

// binary long division on magnitudes; both outputs stripped of leading zeros
void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  q.assign(a.size(), 0);
  r.clear();
  size_t n = bit_length(a);
  for (size_t i = n; i-- > 0;) {
    shl1_add_bit(r, get_bit(a, i));
    if (cmp_mag(r, b) >= 0) {
      r = sub_mag(r, b);
      q[i / 32] |= (1u << (i % 32));
    }
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
}

}  // namespace

BigInt::BigInt(long long v) : small_(v) {
  if (v > kSmallMax || v < -kSmallMax) {
    small_ = 0;
    *this = from_i128(static_cast<__int128>(v));
  }
}

BigInt::BigInt(const BigInt& o) : small_(o.small_), big_(o.big_ ? new Big(*o.big_) : nullptr) {}

BigInt::BigInt(BigInt&& o) noexcept : small_(o.small_), big_(o.big_) {
  o.small_ = 0;
  o.big_ = nullptr;
}

BigInt& BigInt::operator=(const BigInt& o) {
  if (this == &o) return *this;
  delete big_;
  small_ = o.small_;
  big_ = o.big_ ? new Big(*o.big_) : nullptr;
  return *this;
}

BigInt& BigInt::operator=(BigInt&& o) noexcept {
  if (this == &o) return *this;
  delete big_;
  small_ = o.small_;
  big_ = o.big_;
  o.small_ = 0;
  o.big_ = nullptr;
  return *this;
}

BigInt::~BigInt() { delete big_; }

int BigInt::sign() const {
  if (big_) return big_->sign;
  return small_ > 0 ? 1 : (small_ < 0 ? -1 : 0);
}

BigInt BigInt::abs() const {
  if (sign() >= 0) return *this;
  return -*this;
}

void BigInt::to_mag(std::vector<uint32_t>& out, int& sg) const {
  if (big_) {
    out = big_->mag;
    sg = big_->sign;
    return;
  }
  sg = small_ > 0 ? 1 : (small_ < 0 ? -1 : 0);
  unsigned long long m = small_ < 0 ? 0ull - static_cast<unsigned long long>(small_)
                                    : static_cast<unsigned long long>(small_);
  out.clear();
  while (m) {
    out.push_back(static_cast<uint32_t>(m));
    m >>= 32;
  }
}

BigInt BigInt::from_mag(std::vector<uint32_t> mag, int sg) {
  while (!mag.empty() && mag.back() == 0) mag.pop_back();
  if (mag.empty()) return BigInt();
  if (mag.size() <= 2) {
    unsigned long long v = mag[0];
    if (mag.size() == 2) v |= static_cast<unsigned long long>(mag[1]) << 32;
    if (v <= static_cast<unsigned long long>(kSmallMax)) {
      BigInt r;
      r.small_ = sg < 0 ? -static_cast<long long>(v) : static_cast<long long>(v);
      return r;
    }
  }
  auto* b = new Big;
  b->sign = sg;
  b->mag = std::move(mag);
  return BigInt(b);
}

BigInt BigInt::from_i128(__int128 v) {
  if (v >= -static_cast<__int128>(kSmallMax) && v <= static_cast<__int128>(kSmallMax)) {
    BigInt r;
    r.small_ = static_cast<long long>(v);
    return r;
  }
  int sg = v < 0 ? -1 : 1;
  unsigned __int128 m = v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::vector<uint32_t> mag;
  while (m) {
    mag.push_back(static_cast<uint32_t>(m));
    m >>= 32;
  }
  return from_mag(std::move(mag), sg);
}

void BigInt::normalize() {
  if (!big_) return;
  if (big_->mag.empty()) {
    delete big_;
    big_ = nullptr;
    small_ = 0;
    return;
  }
  if (big_->mag.size() <= 2) {
    BigInt r = from_mag(big_->mag, big_->sign);
    *this = std::move(r);
  }
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (!a.big_ && !b.big_) {
    return BigInt::from_i128(static_cast<__int128>(a.small_) + b.small_);
  }
  std::vector<uint32_t> ma, mb;
  int sa, sb;
  a.to_mag(ma, sa);
  b.to_mag(mb, sb);
  if (sa == 0) return b;
  if (sb == 0) return a;
  if (sa == sb) return BigInt::from_mag(add_mag(ma, mb), sa);
  int c = cmp_mag(ma, mb);
  if (c == 0) return BigInt();
  if (c > 0) return BigInt::from_mag(sub_mag(ma, mb), sa);
  return BigInt::from_mag(sub_mag(mb, ma), sb);
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt BigInt::operator-() const {
  if (!big_) {
    BigInt r;
    r.small_ = -small_;
    return r;
  }
  auto* b = new Big(*big_);
  b->sign = -b->sign;
  return BigInt(b);
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (!a.big_ && !b.big_) {
    return BigInt::from_i128(static_cast<__int128>(a.small_) * b.small_);
  }
  std::vector<uint32_t> ma, mb;
  int sa, sb;
  a.to_mag(ma, sa);
  b.to_mag(mb, sb);
  if (sa == 0 || sb == 0) return BigInt();
  return BigInt::from_mag(mul_mag(ma, mb), sa * sb);
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  if (!a.big_ && !b.big_) {
    q = BigInt(a.small_ / b.small_);
    r = BigInt(a.small_ % b.small_);
    return;
  }
  std::vector<uint32_t> ma, mb, mq, mr;
  int sa, sb;
  a.to_mag(ma, sa);
  b.to_mag(mb, sb);
  if (sa == 0) {
    q = BigInt();
    r = BigInt();
    return;
  }
  divmod_mag(ma, mb, mq, mr);
  q = from_mag(std::move(mq), sa * sb);
  r = from_mag(std::move(mr), sa);
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  return r;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
  if (!a.big_ && !b.big_) {
    return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
  }
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  std::vector<uint32_t> ma, mb;
  int s;
  a.to_mag(ma, s);
  b.to_mag(mb, s);
  int c = cmp_mag(ma, mb);
  return sa >= 0 ? c : -c;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  if (!a.big_ && !b.big_) {
    unsigned long long x = a.small_ < 0 ? -static_cast<unsigned long long>(a.small_) : a.small_;
    unsigned long long y = b.small_ < 0 ? -static_cast<unsigned long long>(b.small_) : b.small_;
    return BigInt(static_cast<long long>(std::gcd(x, y)));
  }
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt BigInt::pow(const BigInt& base, unsigned e) {
  BigInt r(1), b = base;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

BigInt BigInt::isqrt(const BigInt& n) {
  if (n.sign() < 0) throw std::domain_error("BigInt: isqrt of negative");
  if (n.is_zero()) return BigInt();
  if (!n.big_) {
    auto x = static_cast<long long>(std::sqrt(static_cast<double>(n.small_)));
    while (x > 0 && x * x > n.small_) --x;
    while ((x + 1) * (x + 1) <= n.small_) ++x;
    return BigInt(x);
  }
  // Newton iteration with a double seed.
  double d = n.to_double();
  BigInt x = from_string(std::to_string(static_cast<unsigned long long>(std::sqrt(d))));
  if (x.is_zero()) x = BigInt(1);
  for (int i = 0; i < 128; ++i) {
    BigInt nx = (x + n / x) / BigInt(2);
    if (cmp(nx, x) >= 0) break;
    x = std::move(nx);
  }
  while (cmp(x * x, n) > 0) x -= BigInt(1);
  while (cmp((x + BigInt(1)) * (x + BigInt(1)), n) <= 0) x += BigInt(1);
  return x;
}

BigInt BigInt::from_string(std::string_view s) {
  size_t i = 0;
  int sg = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    sg = s[i] == '-' ? -1 : 1;
    ++i;
  }
  if (i >= s.size()) throw std::invalid_argument("BigInt: empty numeral");
  BigInt r;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
    r = r * BigInt(10) + BigInt(s[i] - '0');
  }
  return sg < 0 ? -r : r;
}

std::string BigInt::to_string() const {
  if (!big_) return std::to_string(small_);
  std::vector<uint32_t> m;
  int sg;
  to_mag(m, sg);
  std::string out;
  BigInt v = from_mag(std::move(m), 1);
  const BigInt chunk(1000000000LL);
  std::vector<uint32_t> parts;
  while (!v.is_zero()) {
    BigInt q, r;
    divmod(v, chunk, q, r);
    parts.push_back(static_cast<uint32_t>(r.small_));
    v = std::move(q);
  }
  out = std::to_string(parts.back());
  for (size_t i = parts.size() - 1; i-- > 0;) {
    std::string p = std::to_string(parts[i]);
    out += std::string(9 - p.size(), '0') + p;
  }
  return sg < 0 ? "-" + out : out;
}

double BigInt::to_double() const {
  if (!big_) return static_cast<double>(small_);
  double r = 0;
  for (size_t i = big_->mag.size(); i-- > 0;) {
    r = r * 4294967296.0 + big_->mag[i];
  }
  return big_->sign < 0 ? -r : r;
}

size_t BigInt::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  if (!big_) {
    mix(static_cast<uint64_t>(small_));
  } else {
    mix(static_cast<uint64_t>(big_->sign));
    for (uint32_t w : big_->mag) mix(w);
  }
  return static_cast<size_t>(h);
}

}  // namespace tessella

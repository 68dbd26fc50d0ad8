#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>
#include <stdexcept>
#include <algorithm>
#include <iosfwd>
#include <ostream>

namespace kacdem {

// Arbitrary-precision signed integer, sign + base-2^32 magnitude.
// Magnitudes in this library stay tiny; the implementation favors
// simplicity over asymptotics.
class Integer {
  int sign_ = 0;                 // -1, 0, +1
  std::vector<uint32_t> mag_;    // little-endian, no trailing zeros

  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      uint64_t s = carry;
      if (i < a.size()) s += a[i];
      if (i < b.size()) s += b[i];
      r.push_back(static_cast<uint32_t>(s));
      carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }

  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (d < 0) { d += (1LL << 32); borrow = 1; } else borrow = 0;
      r[i] = static_cast<uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a[i]) * b[j] + r[i + j] + carry;
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

  static bool bit(const std::vector<uint32_t>& a, size_t i) {
    return (a[i >> 5] >> (i & 31)) & 1u;
  }

  static void shl1_add_bit(std::vector<uint32_t>& a, bool b) {
    uint32_t carry = b ? 1u : 0u;
    for (auto& limb : a) {
      uint32_t nc = limb >> 31;
      limb = (limb << 1) | carry;
      carry = nc;
    }
    if (carry) a.push_back(carry);
  }

  // schoolbook binary long division on magnitudes
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    q.assign(a.size(), 0);
    r.clear();
    for (size_t i = a.size() * 32; i-- > 0;) {
      shl1_add_bit(r, bit(a, i));
      if (cmp_mag(r, b) >= 0) {
        r = sub_mag(r, b);
        q[i >> 5] |= (1u << (i & 31));
      }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
  }

public:
  Integer() = default;
  Integer(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    while (m) { mag_.push_back(static_cast<uint32_t>(m)); m >>= 32; }
  }
  Integer(int v) : Integer(static_cast<long long>(v)) {}

  static Integer from_string(const std::string& s) {
    Integer r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) { neg = s[i] == '-'; ++i; }
    if (i == s.size()) throw std::invalid_argument("Integer: empty literal");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Integer: bad digit in '" + s + "'");
      r = r * Integer(10) + Integer(s[i] - '0');
    }
    if (neg) r = -r;
    return r;
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }

  bool fits_int64() const {
    if (mag_.size() > 2) return false;
    unsigned long long m = 0;
    for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    return sign_ >= 0 ? m <= 0x7fffffffffffffffULL : m <= 0x8000000000000000ULL;
  }
  long long to_int64() const {
    if (!fits_int64()) throw std::overflow_error("Integer: does not fit int64");
    unsigned long long m = 0;
    for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
    return sign_ >= 0 ? static_cast<long long>(m) : -static_cast<long long>(m);
  }

  friend int cmp(const Integer& a, const Integer& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
  }
  friend bool operator==(const Integer& a, const Integer& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Integer& a, const Integer& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Integer& a, const Integer& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Integer& a, const Integer& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Integer& a, const Integer& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Integer& a, const Integer& b) { return cmp(a, b) >= 0; }

  Integer operator-() const {
    Integer r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend Integer operator+(const Integer& a, const Integer& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    Integer r;
    if (a.sign_ == b.sign_) {
      r.sign_ = a.sign_;
      r.mag_ = add_mag(a.mag_, b.mag_);
    } else {
      int c = cmp_mag(a.mag_, b.mag_);
      if (c == 0) return Integer();
      if (c > 0) { r.sign_ = a.sign_; r.mag_ = sub_mag(a.mag_, b.mag_); }
      else       { r.sign_ = b.sign_; r.mag_ = sub_mag(b.mag_, a.mag_); }
    }
    return r;
  }
  friend Integer operator-(const Integer& a, const Integer& b) { return a + (-b); }
  friend Integer operator*(const Integer& a, const Integer& b) {
    Integer r;
    if (a.sign_ == 0 || b.sign_ == 0) return r;
    r.sign_ = a.sign_ * b.sign_;
    r.mag_ = mul_mag(a.mag_, b.mag_);
    return r;
  }

  // truncated division (C semantics): quotient rounds toward zero
  friend void divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
    if (b.sign_ == 0) throw std::domain_error("Integer: division by zero");
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    r.mag_ = std::move(rm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
  }
  friend Integer operator/(const Integer& a, const Integer& b) {
    Integer q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend Integer operator%(const Integer& a, const Integer& b) {
    Integer q, r;
    divmod(a, b, q, r);
    return r;
  }

  Integer& operator+=(const Integer& o) { return *this = *this + o; }
  Integer& operator-=(const Integer& o) { return *this = *this - o; }
  Integer& operator*=(const Integer& o) { return *this = *this * o; }

  Integer abs() const {
    Integer r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend Integer gcd(Integer a, Integer b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
      Integer r = a % b;
      a = b;
      b = r;
    }
    return a;
  }
  friend Integer lcm(const Integer& a, const Integer& b) {
    if (a.is_zero() || b.is_zero()) return Integer();
    Integer g = gcd(a, b);
    return (a / g * b).abs();
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::string digits;
    Integer t = abs();
    Integer ten(10);
    while (!t.is_zero()) {
      Integer q, r;
      divmod(t, ten, q, r);
      digits += static_cast<char>('0' + (r.mag_.empty() ? 0 : r.mag_[0]));
      t = q;
    }
    if (sign_ < 0) digits += '-';
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

  size_t hash() const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) { h ^= x; h *= 1099511628211ull; };
    mix(static_cast<uint64_t>(sign_ + 1));
    for (uint32_t l : mag_) mix(l);
    return h;
  }
};

inline Integer operator*(long long a, const Integer& b) { return Integer(a) * b; }

} // namespace kacdem

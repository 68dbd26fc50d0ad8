#pragma once

#include "kacdem/bigint.hpp"

#include <string>
#include <stdexcept>

namespace kacdem {

// Exact rational number over Integer; always reduced, denominator > 0.
class Rational {
  Integer num_;
  Integer den_ = Integer(1);

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
    if (num_.is_zero()) { den_ = Integer(1); return; }
    Integer g = gcd(num_, den_);
    if (!g.is_one()) { num_ = num_ / g; den_ = den_ / g; }
  }

public:
  Rational() = default;
  Rational(Integer n) : num_(std::move(n)) {}
  Rational(long long n) : num_(n) {}
  Rational(int n) : num_(static_cast<long long>(n)) {}
  Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  // accepts "p" or "p/q"
  static Rational from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer::from_string(s));
    return Rational(Integer::from_string(s.substr(0, slash)),
                    Integer::from_string(s.substr(slash + 1)));
  }

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_.is_one(); }
  int sign() const { return num_.sign(); }

  Integer to_integer() const {
    if (!is_integer()) throw std::domain_error("Rational: not an integer: " + to_string());
    return num_;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend int cmp(const Rational& a, const Rational& b) {
    return cmp(a.num_ * b.den_, b.num_ * a.den_);
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

  // canonical "p" or "p/q"
  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

  size_t hash() const {
    size_t h = num_.hash();
    h ^= den_.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

} // namespace kacdem

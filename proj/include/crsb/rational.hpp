#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace crsb {

struct overflow_error : std::runtime_error {
  overflow_error() : std::runtime_error("exact integer overflow (128-bit)") {}
};

struct arithmetic_error : std::runtime_error {
  explicit arithmetic_error(const std::string& what) : std::runtime_error(what) {}
};

using int128 = __int128;

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error();
  return r;
}

inline int128 checked_sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error();
  return r;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error();
  return r;
}

inline int128 abs128(int128 a) { return a < 0 ? -a : a; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string int128_to_string(int128 v);
int128 int128_from_string(const std::string& s);

/// Exact rational number. Always held normalized: den > 0, gcd(num,den) = 1.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(int n) : num_(n), den_(1) {}        // NOLINT
  Rat(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

  static Rat of(long long n, long long d) { return Rat(int128(n), int128(d)); }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rat& operator+=(const Rat& o) {
    num_ = checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_));
    den_ = checked_mul(den_, o.den_);
    normalize();
    return *this;
  }
  Rat& operator-=(const Rat& o) { return *this += -o; }
  Rat& operator*=(const Rat& o) {
    num_ = checked_mul(num_, o.num_);
    den_ = checked_mul(den_, o.den_);
    normalize();
    return *this;
  }
  Rat& operator/=(const Rat& o) {
    if (o.num_ == 0) throw arithmetic_error("rational division by zero");
    num_ = checked_mul(num_, o.den_);
    den_ = checked_mul(den_, o.num_);
    normalize();
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  /// "p" or "p/q".
  std::string str() const;
  /// Parses "p" or "p/q".
  static Rat parse(const std::string& s);

  size_t hash() const {
    auto h = std::hash<unsigned long long>();
    size_t a = h((unsigned long long)(num_ & 0xffffffffffffffffULL));
    size_t b = h((unsigned long long)(den_ & 0xffffffffffffffffULL));
    size_t c = h((unsigned long long)(uint64_t)(num_ >> 64));
    return a ^ (b * 0x9e3779b97f4a7c15ULL) ^ (c << 1);
  }

 private:
  void normalize() {
    if (den_ == 0) throw arithmetic_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    int128 g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  int128 num_;
  int128 den_;
};

}  // namespace crsb

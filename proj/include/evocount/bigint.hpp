#ifndef EVOCOUNT_BIGINT_HPP
#define EVOCOUNT_BIGINT_HPP

#include <cstdint>
#include <string>

#include "evocount/errors.hpp"

namespace evocount {

/* Exact nonnegative counter on top of unsigned __int128 with hard
 * overflow and divisibility checks. Orbit counts, group orders and
 * Burnside sums at desk scale stay far below 2^127; anything bigger is
 * an error, never a silent wrap. */
class BigUint {
 public:
  BigUint() : v_(0) {}
  BigUint(unsigned long long x) : v_(x) {}  // NOLINT: implicit by design

  static BigUint from_u128(unsigned __int128 x) {
    BigUint b;
    b.v_ = x;
    return b;
  }

  unsigned __int128 raw() const { return v_; }

  bool fits_u64() const { return v_ <= ~0ULL; }
  std::uint64_t as_u64() const {
    if (!fits_u64()) throw internal_error("count does not fit in 64 bits");
    return static_cast<std::uint64_t>(v_);
  }

  BigUint& operator+=(const BigUint& o) {
    unsigned __int128 s = v_ + o.v_;
    if (s < v_) throw internal_error("count overflow in addition");
    v_ = s;
    return *this;
  }
  BigUint& operator-=(const BigUint& o) {
    if (o.v_ > v_) throw internal_error("count underflow in subtraction");
    v_ -= o.v_;
    return *this;
  }
  BigUint& operator*=(const BigUint& o) {
    if (v_ != 0 && o.v_ != 0) {
      unsigned __int128 p = v_ * o.v_;
      if (p / v_ != o.v_) throw internal_error("count overflow in product");
      v_ = p;
    } else {
      v_ = 0;
    }
    return *this;
  }

  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
  friend BigUint operator*(BigUint a, const BigUint& b) { return a *= b; }

  friend bool operator==(const BigUint& a, const BigUint& b) { return a.v_ == b.v_; }
  friend bool operator!=(const BigUint& a, const BigUint& b) { return a.v_ != b.v_; }
  friend bool operator<(const BigUint& a, const BigUint& b) { return a.v_ < b.v_; }
  friend bool operator<=(const BigUint& a, const BigUint& b) { return a.v_ <= b.v_; }
  friend bool operator>(const BigUint& a, const BigUint& b) { return a.v_ > b.v_; }
  friend bool operator>=(const BigUint& a, const BigUint& b) { return a.v_ >= b.v_; }

  /* Division that must be exact; a nonzero remainder is an internal error. */
  BigUint div_exact(const BigUint& d, const char* what = "division") const {
    if (d.v_ == 0) throw internal_error("exact division by zero");
    if (v_ % d.v_ != 0) {
      throw internal_error(std::string("inexact ") + what + ": " + to_string() +
                           " not divisible by " + d.to_string());
    }
    return from_u128(v_ / d.v_);
  }

  BigUint pow(unsigned e) const {
    BigUint r(1), b(*this);
    while (e) {
      if (e & 1) r *= b;
      b = (e >>= 1) ? b * b : b;
    }
    return r;
  }

  std::string to_string() const {
    if (v_ == 0) return "0";
    unsigned __int128 x = v_;
    std::string s;
    while (x) {
      s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
      x /= 10;
    }
    return std::string(s.rbegin(), s.rend());
  }

  static BigUint parse(const std::string& s) {
    if (s.empty()) throw invalid_input("empty integer literal");
    BigUint r(0);
    for (char c : s) {
      if (c < '0' || c > '9') throw invalid_input("bad digit in integer literal");
      r *= 10u;
      r += static_cast<unsigned long long>(c - '0');
    }
    return r;
  }

 private:
  unsigned __int128 v_;
};

/* base^exp <= limit, evaluated without ever overflowing */
inline bool pow_within(std::uint64_t base, int exp, std::uint64_t limit) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) return false;
  }
  return true;
}

}  // namespace evocount

#endif

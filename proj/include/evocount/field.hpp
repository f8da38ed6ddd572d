#ifndef EVOCOUNT_FIELD_HPP
#define EVOCOUNT_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "evocount/errors.hpp"

namespace evocount {

/* Elements of F_q are stored as codes in [0, q). A code is the base-p
 * packing of the coefficient vector of the polynomial residue, constant
 * term in the least significant digit; for a prime field the code is the
 * residue itself. */
using FqElem = std::uint16_t;

struct RootOfUnity {
  FqElem value;
  std::uint64_t order;  // exact multiplicative order
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/* monic polynomial division remainder over Z_p, little-endian coeffs */
inline std::vector<int> poly_mod_p(std::vector<int> num, const std::vector<int>& den, int p) {
  int dd = static_cast<int>(den.size()) - 1;
  while (static_cast<int>(num.size()) - 1 >= dd) {
    int dn = static_cast<int>(num.size()) - 1;
    int lead = num[dn] % p;
    if (lead != 0) {
      int shift = dn - dd;
      for (int i = 0; i <= dd; ++i) {
        num[shift + i] = ((num[shift + i] - lead * den[i]) % p + p * p) % p;
      }
    }
    num.pop_back();
  }
  while (!num.empty() && num.back() == 0) num.pop_back();
  return num;
}

}  // namespace detail

/* The field F_q, q = p^m, with a fixed monic irreducible modulus.
 * Immutable after construction; all element operations are pure and a
 * Field can be shared freely between threads. */
class Field {
 public:
  /* Deterministic construction: the modulus is the lexicographically
   * least monic irreducible polynomial of degree m over F_p, coefficients
   * compared from the constant term up. For m = 1 this is x. */
  static Field make(std::uint64_t p, int m) {
    check_params(p, m);
    return Field(p, m, least_irreducible(p, m));
  }

  /* Construction with an explicit modulus (monic, degree m, coefficients
   * c_0..c_m little-endian). Used to check that counts do not depend on
   * the representation of the field. */
  static Field with_modulus(std::uint64_t p, int m, const std::vector<int>& modulus) {
    check_params(p, m);
    if (static_cast<int>(modulus.size()) != m + 1 || modulus[m] != 1)
      throw invalid_input("modulus must be monic of degree m");
    for (int c : modulus)
      if (c < 0 || static_cast<std::uint64_t>(c) >= p)
        throw invalid_input("modulus coefficient out of range");
    if (!is_irreducible(modulus, p))
      throw invalid_input("modulus is not irreducible over F_p");
    return Field(p, m, modulus);
  }

  /* All monic irreducible polynomials of degree m over F_p, in the same
   * lexicographic order used by make(). */
  static std::vector<std::vector<int>> irreducible_moduli(std::uint64_t p, int m) {
    check_params(p, m);
    std::vector<std::vector<int>> out;
    std::uint64_t count = pow_u64(p, m);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<int> cand = candidate_from_index(idx, p, m);
      if (is_irreducible(cand, p)) out.push_back(cand);
    }
    return out;
  }

  std::uint64_t p() const { return p_; }
  int m() const { return m_; }
  std::uint64_t q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  FqElem zero() const { return 0; }
  FqElem one() const { return 1; }

  bool same_field(const Field& o) const {
    return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
  }

  std::vector<int> coeffs(FqElem a) const {
    std::vector<int> c(m_);
    std::uint64_t x = a;
    for (int i = 0; i < m_; ++i) {
      c[i] = static_cast<int>(x % p_);
      x /= p_;
    }
    return c;
  }

  FqElem encode(const std::vector<int>& c) const {
    std::uint64_t code = 0;
    for (int i = m_ - 1; i >= 0; --i) code = code * p_ + static_cast<std::uint64_t>(c[i]);
    return static_cast<FqElem>(code);
  }

  FqElem add(FqElem a, FqElem b) const {
    if (tabled()) return add_tab_[a * q_ + b];
    return add_generic(a, b);
  }
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  FqElem neg(FqElem a) const {
    if (tabled()) return neg_tab_[a];
    return neg_generic(a);
  }
  FqElem mul(FqElem a, FqElem b) const {
    if (tabled()) return mul_tab_[a * q_ + b];
    return mul_generic(a, b);
  }
  FqElem sqr(FqElem a) const { return mul(a, a); }
  FqElem inv(FqElem a) const {
    if (a == 0) throw invalid_input("division by zero in F_q");
    if (tabled()) return inv_tab_[a];
    return pow(a, q_ - 2);
  }
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

  FqElem pow(FqElem a, std::uint64_t e) const {
    FqElem r = 1, b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  /* exact multiplicative order of a nonzero element */
  std::uint64_t order(FqElem a) const {
    if (a == 0) throw invalid_input("zero has no multiplicative order");
    std::uint64_t n = q_ - 1;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0 && pow(a, d) == 1) return d;
    }
    throw internal_error("multiplicative order not found");
  }

  /* All x with x^k = 1, each flagged with its exact order. The result
   * has gcd(k, q-1) entries. */
  std::vector<RootOfUnity> roots_of_unity(std::uint64_t k) const {
    if (k < 1) throw invalid_input("k must be positive");
    std::vector<RootOfUnity> out;
    for (std::uint64_t x = 1; x < q_; ++x) {
      FqElem e = static_cast<FqElem>(x);
      if (pow(e, k) == 1) out.push_back({e, order(e)});
    }
    return out;
  }

  /* 1 if m divides q-1, else 0 */
  int factor_indicator(std::uint64_t m) const {
    if (m <= 1) throw invalid_input("factor indicator needs m > 1");
    return (q_ - 1) % m == 0 ? 1 : 0;
  }

  std::string describe() const {
    std::string s = "F_" + std::to_string(q_);
    if (m_ > 1) {
      s += " = F_" + std::to_string(p_) + "[x]/(";
      bool first = true;
      for (int i = m_; i >= 0; --i) {
        int c = (i == m_) ? 1 : modulus_[i];
        if (c == 0) continue;
        if (!first) s += "+";
        first = false;
        if (i == 0 || c != 1) s += std::to_string(c);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
      }
      s += ")";
    }
    return s;
  }

 private:
  Field(std::uint64_t p, int m, std::vector<int> modulus)
      : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = pow_u64(p_, m_);
    if (tabled()) build_tables();
  }

  static void check_params(std::uint64_t p, int m) {
    if (!detail::is_prime_u64(p)) throw invalid_input("p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw invalid_input("extension degree m must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) {
      if (q > 65536 / p) throw invalid_input("q = p^m exceeds the supported size (65536)");
      q *= p;
    }
  }

  static std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  }

  /* index -> monic degree-m candidate; c_0 sits in the highest place so
   * that ascending indices give the constant-term-first lexicographic order */
  static std::vector<int> candidate_from_index(std::uint64_t idx, std::uint64_t p, int m) {
    std::vector<int> c(m + 1, 0);
    c[m] = 1;
    for (int i = 0; i < m; ++i) {
      std::uint64_t place = pow_u64(p, m - 1 - i);
      c[i] = static_cast<int>((idx / place) % p);
    }
    return c;
  }

  /* trial division against every monic polynomial of degree <= m/2 */
  static bool is_irreducible(const std::vector<int>& f, std::uint64_t p) {
    int m = static_cast<int>(f.size()) - 1;
    if (m == 1) return true;
    for (int d = 1; 2 * d <= m; ++d) {
      std::uint64_t count = pow_u64(p, d);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<int> g(d + 1, 0);
        g[d] = 1;
        std::uint64_t x = idx;
        for (int i = 0; i < d; ++i) {
          g[i] = static_cast<int>(x % p);
          x /= p;
        }
        if (detail::poly_mod_p(f, g, static_cast<int>(p)).empty()) return false;
      }
    }
    return true;
  }

  static std::vector<int> least_irreducible(std::uint64_t p, int m) {
    std::uint64_t count = pow_u64(p, m);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<int> cand = candidate_from_index(idx, p, m);
      if (is_irreducible(cand, p)) return cand;
    }
    throw internal_error("no irreducible polynomial found");  // cannot happen
  }

  bool tabled() const { return q_ <= 256; }

  FqElem add_generic(FqElem a, FqElem b) const {
    std::vector<int> ca = coeffs(a), cb = coeffs(b);
    for (int i = 0; i < m_; ++i) ca[i] = (ca[i] + cb[i]) % static_cast<int>(p_);
    return encode(ca);
  }

  FqElem neg_generic(FqElem a) const {
    std::vector<int> c = coeffs(a);
    for (int i = 0; i < m_; ++i) c[i] = (static_cast<int>(p_) - c[i]) % static_cast<int>(p_);
    return encode(c);
  }

  FqElem mul_generic(FqElem a, FqElem b) const {
    int p = static_cast<int>(p_);
    std::vector<int> ca = coeffs(a), cb = coeffs(b);
    std::vector<int> prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
      if (ca[i] == 0) continue;
      for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
    }
    std::vector<int> r = detail::poly_mod_p(prod, modulus_, p);
    r.resize(m_, 0);
    return encode(r);
  }

  void build_tables() {
    add_tab_.resize(q_ * q_);
    mul_tab_.resize(q_ * q_);
    neg_tab_.resize(q_);
    inv_tab_.assign(q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a) {
      neg_tab_[a] = neg_generic(static_cast<FqElem>(a));
      for (std::uint64_t b = 0; b < q_; ++b) {
        add_tab_[a * q_ + b] = add_generic(static_cast<FqElem>(a), static_cast<FqElem>(b));
        mul_tab_[a * q_ + b] = mul_generic(static_cast<FqElem>(a), static_cast<FqElem>(b));
      }
    }
    for (std::uint64_t a = 1; a < q_; ++a) {
      for (std::uint64_t b = 1; b < q_; ++b) {
        if (mul_tab_[a * q_ + b] == 1) {
          inv_tab_[a] = static_cast<FqElem>(b);
          break;
        }
      }
      if (inv_tab_[a] == 0) throw internal_error("noninvertible nonzero element; modulus not irreducible?");
    }
  }

  std::uint64_t p_;
  int m_;
  std::vector<int> modulus_;
  std::uint64_t q_;
  std::vector<FqElem> add_tab_, mul_tab_, neg_tab_, inv_tab_;
};

/* q -> (p, m) when q is a prime power */
inline bool factor_prime_power(std::uint64_t q, std::uint64_t* p, int* m) {
  if (q < 2) return false;
  std::uint64_t base = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  std::uint64_t x = q;
  int e = 0;
  while (x % base == 0) {
    x /= base;
    ++e;
  }
  if (x != 1) return false;
  *p = base;
  *m = e;
  return true;
}

}  // namespace evocount

#endif

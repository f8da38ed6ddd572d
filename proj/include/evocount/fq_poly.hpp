#ifndef EVOCOUNT_FQ_POLY_HPP
#define EVOCOUNT_FQ_POLY_HPP

#include <vector>

#include "evocount/field.hpp"

namespace evocount {

/* Minimal univariate polynomial arithmetic over F_q, little-endian
 * coefficients. Only what the Euclidean gcd needs. */
namespace fqpoly {

inline void trim(std::vector<FqElem>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const std::vector<FqElem>& f) {
  return static_cast<int>(f.size()) - 1;  // -1 for the zero polynomial
}

/* remainder of f modulo g, g nonzero */
inline std::vector<FqElem> mod(const Field& F, std::vector<FqElem> f, const std::vector<FqElem>& g) {
  int dg = degree(g);
  FqElem lead_inv = F.inv(g.back());
  while (degree(f) >= dg) {
    int df = degree(f);
    FqElem c = F.mul(f.back(), lead_inv);
    int shift = df - dg;
    for (int i = 0; i <= dg; ++i) {
      f[shift + i] = F.sub(f[shift + i], F.mul(c, g[i]));
    }
    trim(f);
    if (degree(f) == df) throw internal_error("polynomial division failed to reduce degree");
  }
  return f;
}

inline std::vector<FqElem> gcd(const Field& F, std::vector<FqElem> a, std::vector<FqElem> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::vector<FqElem> r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {  // monic normalization
    FqElem li = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, li);
  }
  return a;
}

/* y^n - 1 */
inline std::vector<FqElem> cyclotomic_like(const Field& F, int n) {
  std::vector<FqElem> f(n + 1, 0);
  f[0] = F.neg(F.one());
  f[n] = F.one();
  return f;
}

}  // namespace fqpoly
}  // namespace evocount

#endif

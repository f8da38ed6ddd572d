#ifndef EVOCOUNT_CLOSED_FORM_HPP
#define EVOCOUNT_CLOSED_FORM_HPP

#include <ostream>
#include <string>
#include <vector>

#include "evocount/bigint.hpp"
#include "evocount/errors.hpp"
#include "evocount/field.hpp"
#include "evocount/matrix.hpp"
#include "evocount/partitions.hpp"

namespace evocount {
namespace closed_form {

/* The divisibility pattern of q-1 that selects the table cell, plus the
 * characteristic class. p = 2 forces q-1 odd, hence P4 = 0; P15 is the
 * conjunction of P3 and P5. Both facts are asserted. */
struct CaseKey {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  bool p3 = false, p4 = false, p5 = false, p7 = false, p15 = false;
};

inline CaseKey case_key(const Field& f) {
  CaseKey k;
  k.p = f.p();
  k.q = f.q();
  k.p3 = f.factor_indicator(3) != 0;
  k.p4 = f.factor_indicator(4) != 0;
  k.p5 = f.factor_indicator(5) != 0;
  k.p7 = f.factor_indicator(7) != 0;
  k.p15 = f.factor_indicator(15) != 0;
  if (k.p == 2 && k.p4) throw internal_error("q even but 4 | q-1");
  if (k.p15 != (k.p3 && k.p5)) throw internal_error("P15 != P3 && P5");
  return k;
}

namespace detail {

inline BigUint qpow(const CaseKey& k, unsigned e) { return BigUint(k.q).pow(e); }

/* B({1,1}) and B({2}) for n = 2 */
inline BigUint b_n2(const CaseKey& k, const std::vector<int>& parts) {
  BigUint q(k.q), q1(k.q - 1);
  if (parts == std::vector<int>{1, 1}) {
    BigUint poly = q * q + q + (k.p3 ? 2u : 0u);
    return (q1 * q1 * poly).div_exact(2u, "B({1,1})/2");
  }
  if (parts == std::vector<int>{2}) {
    if (k.p == 2) return (q * q1 * q1).div_exact(2u, "B({2})/2");
    return (q1 * q1 * q1).div_exact(2u, "B({2})/2");
  }
  throw invalid_input("unknown partition for n = 2");
}

/* B({1,1,1}), B({1,2}), B({3}) for n = 3 */
inline BigUint b_n3(const CaseKey& k, const Field& f, const std::vector<int>& parts) {
  BigUint q(k.q), q1(k.q - 1);
  if (parts == std::vector<int>{1, 1, 1}) {
    BigUint base = gl_order(f, 3).div_exact(6u, "|GL_3|/6");
    unsigned extra = (k.p3 ? 1u : 0u) + (k.p7 ? 2u : 0u);
    return base + BigUint(extra) * q1.pow(3);
  }
  if (parts == std::vector<int>{1, 2}) {
    if (k.p == 2) return (q.pow(3) * q1.pow(3)).div_exact(2u, "B({1,2})/2");
    return (q * q1.pow(4) * (q + 1u)).div_exact(2u, "B({1,2})/2");
  }
  if (parts == std::vector<int>{3}) {
    if (k.p == 3) return (q.pow(2) * q1.pow(3)).div_exact(3u, "B({3})/3");
    if (k.p3) return q1.pow(5).div_exact(3u, "B({3})/3");
    return (q1.pow(4) * (q + 1u)).div_exact(3u, "B({3})/3");
  }
  throw invalid_input("unknown partition for n = 3");
}

/* per-partition contributions for n = 4 */
inline BigUint b_n4(const CaseKey& k, const std::vector<int>& parts) {
  BigUint q(k.q), q1(k.q - 1);
  if (parts == std::vector<int>{1, 1, 1, 1}) {
    BigUint sum = q.pow(6) * q1.pow(4) * (q + 1u).pow(2) * (q * q + 1u) * (q * q + q + 1u);
    if (k.p3) sum += BigUint(12u) * q * q1.pow(4) * (q + 1u) + BigUint(6u) * q.pow(2) * q1.pow(4) * (q + 1u).pow(2);
    if (k.p7) sum += BigUint(48u) * q1.pow(4);
    if (k.p15) sum += BigUint(48u) * q1.pow(4);
    if (k.p5) sum += BigUint(24u) * q1.pow(4);
    return sum.div_exact(24u, "B({1,1,1,1})/4!");
  }
  if (parts == std::vector<int>{1, 1, 2}) {
    if (k.p == 2) {
      BigUint poly = q.pow(6) + q.pow(5) + (k.p3 ? 2u : 0u);
      return (q * q1.pow(4) * poly).div_exact(4u, "B({1,1,2})/4");
    }
    BigUint poly = (q.pow(4) + q.pow(3)) * (q * q + q + 1u) + (k.p3 ? 2u : 0u);
    return (q1.pow(5) * poly).div_exact(4u, "B({1,1,2})/4");
  }
  if (parts == std::vector<int>{1, 3}) {
    if (k.p == 3) return (q.pow(4) * q1.pow(4)).div_exact(3u, "B({1,3})/3");
    // the 3 | q-1 branch: the free-row parameter whose image under the
    // Vandermonde map only hits two nonzero constraints contributes a
    // factor q(q-1)^2, not (q-1)^3; pinned by the dense-system oracle
    if (k.p3) return (q * q1.pow(6) * (q + 1u)).div_exact(3u, "B({1,3})/3");
    return (q * q1.pow(5) * (q + 1u).pow(2)).div_exact(3u, "B({1,3})/3");
  }
  if (parts == std::vector<int>{2, 2}) {
    if (k.p == 2) {
      BigUint sum = q.pow(5) * q1.pow(4) * (q + 1u);
      if (k.p3) sum += BigUint(2u) * q.pow(2) * q1.pow(4);
      return sum.div_exact(8u, "B({2,2})/8");
    }
    BigUint sum = q.pow(2) * q1.pow(6) * (q + 1u).pow(2);
    if (k.p3) sum += BigUint(2u) * q1.pow(6);
    return sum.div_exact(8u, "B({2,2})/8");
  }
  if (parts == std::vector<int>{4}) {
    if (k.p == 2) return (q.pow(3) * q1.pow(4)).div_exact(4u, "B({4})/4");
    if (k.p4) return q1.pow(7).div_exact(4u, "B({4})/4");
    return (q1.pow(6) * (q + 1u)).div_exact(4u, "B({4})/4");
  }
  throw invalid_input("unknown partition for n = 4");
}

}  // namespace detail

/* B(mu) in closed form; defined for n in {2, 3, 4}. */
inline BigUint partition_contribution(const Field& f, const std::vector<int>& parts) {
  CaseKey k = case_key(f);
  int n = 0;
  for (int part : parts) n += part;
  switch (n) {
    case 2:
      return detail::b_n2(k, parts);
    case 3:
      return detail::b_n3(k, f, parts);
    case 4:
      return detail::b_n4(k, parts);
    default:
      throw invalid_input("closed forms cover n in {2, 3, 4} only");
  }
}

inline BigUint count_dim2(const Field& f) {
  CaseKey k = case_key(f);
  BigUint sq = BigUint(k.q + 1).pow(2);
  if (k.p == 2) {
    // (q+1)^2 is odd; the +-1 makes the halved value exact
    return k.p3 ? (sq + 1u).div_exact(2u, "((q+1)^2+1)/2") : (sq - 1u).div_exact(2u, "((q+1)^2-1)/2");
  }
  BigUint half = sq.div_exact(2u, "(q+1)^2/2");
  return k.p3 ? half : half - 1u;
}

inline BigUint count_dim3(const Field& f) {
  CaseKey k = case_key(f);
  BigUint q(k.q);
  BigUint c = (q.pow(3) * (q + 1u) * (q * q + q + 1u)).div_exact(6u, "q^3(q+1)(q^2+q+1)/6");
  BigUint n = c + BigUint((k.p3 ? 1u : 0u) + (k.p7 ? 2u : 0u));
  if (k.p == 2) {
    n += q.pow(3).div_exact(2u, "q^3/2");
  } else {
    n += (q * (q * q - 1u)).div_exact(2u, "q(q^2-1)/2");
  }
  if (k.p == 3) {
    n += (q * q).div_exact(3u, "q^2/3");
  } else if (k.p3) {
    n += BigUint(k.q - 1).pow(2).div_exact(3u, "(q-1)^2/3");
  } else {
    n += (q * q - 1u).div_exact(3u, "(q^2-1)/3");
  }
  return n;
}

inline BigUint count_dim4(const Field& f) {
  CaseKey k = case_key(f);
  BigUint q(k.q), q1(k.q - 1);

  BigUint b0 = q.pow(6) * (q + 1u).pow(2) * (q * q + 1u) * (q * q + q + 1u);
  if (k.p3) b0 += BigUint(12u) * q * (q + 1u) + BigUint(6u) * q.pow(2) * (q + 1u).pow(2);
  b0 += BigUint(48u * ((k.p7 ? 1u : 0u) + (k.p15 ? 1u : 0u)) + 24u * (k.p5 ? 1u : 0u));
  b0 = b0.div_exact(24u, "b0/4!");

  BigUint b1 = (k.p == 2)
                   ? (q * (q.pow(6) + q.pow(5) + (k.p3 ? 2u : 0u))).div_exact(4u, "b1/4")
                   : (q1 * ((q.pow(4) + q.pow(3)) * (q * q + q + 1u) + (k.p3 ? 2u : 0u)))
                         .div_exact(4u, "b1'/4");

  BigUint b2;
  if (k.p == 3) {
    b2 = q.pow(4).div_exact(3u, "b2/3");
  } else if (k.p3) {
    b2 = (q * q1.pow(2) * (q + 1u)).div_exact(3u, "b2'/3");
  } else {
    b2 = (q * q1 * (q + 1u).pow(2)).div_exact(3u, "b2'/3");
  }

  BigUint b3 = (k.p == 2)
                   ? (q.pow(5) * (q + 1u) + BigUint(2u * (k.p3 ? 1u : 0u)) * q.pow(2))
                         .div_exact(8u, "b3/8")
                   : (q.pow(2) * (q * q - 1u).pow(2) + BigUint(2u * (k.p3 ? 1u : 0u)) * q1.pow(2))
                         .div_exact(8u, "b3'/8");

  BigUint b4;
  if (k.p == 2) {
    b4 = q.pow(3).div_exact(4u, "b4/4");
  } else if (k.p4) {
    b4 = q1.pow(3).div_exact(4u, "b4'/4");
  } else {
    b4 = (q1.pow(2) * (q + 1u)).div_exact(4u, "b4'/4");
  }

  BigUint total = b0 + b1 + b2 + b3 + b4;

  // the per-partition route must agree with the summed route
  BigUint check(0);
  for (const Partition& mu : partitions(4)) check += partition_contribution(f, mu.parts);
  if (check != total * q1.pow(4))
    throw internal_error("dimension-4 table and per-partition contributions disagree");
  return total;
}

/* N(n, F_q) from the tables; n in {2, 3, 4}. */
inline BigUint count(const Field& f, int n) {
  switch (n) {
    case 2:
      return count_dim2(f);
    case 3:
      return count_dim3(f);
    case 4:
      return count_dim4(f);
    default:
      throw invalid_input("closed forms cover n in {2, 3, 4} only");
  }
}

/* The table-cell selection, spelled out as data so it can be dumped and
 * audited independently of the evaluation code. */
struct DispatchCell {
  const char* condition;
  const char* cell;
};

inline const std::vector<DispatchCell>& dispatch_table() {
  static const std::vector<DispatchCell> table = {
      {"n=2  p=2  3|(q-1)", "((q+1)^2+1)/2"},
      {"n=2  p=2  3!|(q-1)", "((q+1)^2-1)/2"},
      {"n=2  p!=2 3|(q-1)", "(q+1)^2/2"},
      {"n=2  p!=2 3!|(q-1)", "(q+1)^2/2 - 1"},
      {"n=3  any", "c = q^3(q+1)(q^2+q+1)/6, plus 1 if 3|(q-1), plus 2 if 7|(q-1)"},
      {"n=3  p=2", "+ q^3/2"},
      {"n=3  p!=2", "+ q(q^2-1)/2"},
      {"n=3  p=3", "+ q^2/3"},
      {"n=3  p!=3 3|(q-1)", "+ (q-1)^2/3"},
      {"n=3  p!=3 3!|(q-1)", "+ (q^2-1)/3"},
      {"n=4  p=2", "b0 + b1 + b2' + b3 + b4"},
      {"n=4  p=3", "b0 + b1' + b2 + b3' + b4'"},
      {"n=4  p>3", "b0 + b1' + b2' + b3' + b4'"},
      {"n=4  b0", "[q^6(q+1)^2(q^2+1)(q^2+q+1) + P3(12q(q+1)+6q^2(q+1)^2) + 48(P7+P15) + 24 P5]/24"},
      {"n=4  b1", "q(q^6+q^5+2 P3)/4"},
      {"n=4  b1'", "(q-1)[(q^4+q^3)(q^2+q+1)+2 P3]/4"},
      {"n=4  b2", "q^4/3"},
      {"n=4  b2'", "[P3 q(q-1)^2(q+1) + (1-P3) q(q-1)(q+1)^2]/3"},
      {"n=4  b3", "[q^5(q+1)+2 P3 q^2]/8"},
      {"n=4  b3'", "[q^2(q^2-1)^2+2 P3 (q-1)^2]/8"},
      {"n=4  b4", "q^3/4"},
      {"n=4  b4'", "[P4 (q-1)^3 + (1-P4)(q-1)^2(q+1)]/4"},
  };
  return table;
}

inline void dump_dispatch(std::ostream& os) {
  for (const auto& cell : dispatch_table()) {
    os << cell.condition << "  ->  " << cell.cell << "\n";
  }
}

}  // namespace closed_form
}  // namespace evocount

#endif

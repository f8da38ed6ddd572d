#ifndef EVOCOUNT_PARTITIONS_HPP
#define EVOCOUNT_PARTITIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "evocount/errors.hpp"

namespace evocount {

/* A partition of n with nondecreasing parts, viewed as the cycle type of
 * its canonical permutation: consecutive cycles (k_i+1, ..., k_i+part_i)
 * where k_i is the sum of the earlier parts. Shorter cycles come first. */
struct Partition {
  std::vector<int> parts;            // nondecreasing, sums to n
  int n = 0;
  std::vector<int> offsets;          // k_i, 0-based start of each cycle
  std::uint64_t d = 1;               // centralizer order  prod_k m_k! * k^m_k
  std::uint64_t c = 1;               // conjugacy class size n!/d
  std::vector<std::uint8_t> sigma;   // canonical permutation, one-line 0-based

  std::string to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + "}";
  }
};

namespace detail {

inline std::uint64_t factorial_u64(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

inline Partition finish_partition(std::vector<int> parts, int n) {
  Partition p;
  p.parts = std::move(parts);
  p.n = n;
  p.offsets.resize(p.parts.size());
  int k = 0;
  for (size_t i = 0; i < p.parts.size(); ++i) {
    p.offsets[i] = k;
    k += p.parts[i];
  }
  std::vector<int> mult(n + 1, 0);
  for (int part : p.parts) ++mult[part];
  p.d = 1;
  for (int len = 1; len <= n; ++len) {
    if (!mult[len]) continue;
    p.d *= factorial_u64(mult[len]);
    for (int i = 0; i < mult[len]; ++i) p.d *= static_cast<std::uint64_t>(len);
  }
  p.c = factorial_u64(n) / p.d;
  p.sigma.resize(n);
  for (size_t i = 0; i < p.parts.size(); ++i) {
    int off = p.offsets[i], len = p.parts[i];
    for (int s = 0; s < len - 1; ++s) p.sigma[off + s] = static_cast<std::uint8_t>(off + s + 1);
    p.sigma[off + len - 1] = static_cast<std::uint8_t>(off);
  }
  return p;
}

inline void gen_partitions(int min_part, int remaining, std::vector<int>& prefix, int n,
                           std::vector<Partition>& out) {
  for (int part = min_part; part <= remaining; ++part) {
    prefix.push_back(part);
    if (part == remaining) {
      out.push_back(finish_partition(prefix, n));
    } else if (remaining - part >= part) {
      gen_partitions(part, remaining - part, prefix, n, out);
    }
    prefix.pop_back();
  }
}

}  // namespace detail

/* All partitions of n in lexicographic order of the part sequences. */
inline std::vector<Partition> partitions(int n) {
  if (n < 1) throw invalid_input("partitions need n >= 1");
  if (n > 20) throw invalid_input("partition dimension beyond supported range");
  std::vector<Partition> out;
  std::vector<int> prefix;
  detail::gen_partitions(1, n, prefix, n, out);
  return out;
}

}  // namespace evocount

#endif

#ifndef EVOCOUNT_GROUP_ACTION_HPP
#define EVOCOUNT_GROUP_ACTION_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "evocount/bigint.hpp"
#include "evocount/errors.hpp"
#include "evocount/matrix.hpp"

namespace evocount {

/* An element sigma*t of S_n x| T_n: a permutation (one-line, 0-based
 * images) and a diagonal of nonzero field elements. The pair acts on a
 * structure matrix A by A -> t^-1 sigma^-1 A sigma t^2, entrywise
 * (i,j) -> t_i^-1 * a_{sigma(i),sigma(j)} * t_j^2. */
struct GroupElement {
  std::vector<std::uint8_t> sigma;
  std::vector<FqElem> t;

  int n() const { return static_cast<int>(sigma.size()); }

  bool operator==(const GroupElement& o) const { return sigma == o.sigma && t == o.t; }
};

inline GroupElement group_identity(const Field& f, int n) {
  GroupElement g;
  g.sigma.resize(n);
  std::iota(g.sigma.begin(), g.sigma.end(), 0);
  g.t.assign(n, f.one());
  return g;
}

inline BigUint group_order(const Field& f, int n) {
  BigUint r(1);
  for (int i = 2; i <= n; ++i) r *= static_cast<unsigned long long>(i);
  return r * BigUint(f.q() - 1).pow(static_cast<unsigned>(n));
}

inline void check_group_element(const Field& f, const GroupElement& g) {
  std::vector<bool> seen(g.sigma.size(), false);
  for (auto s : g.sigma) {
    if (s >= g.sigma.size() || seen[s]) throw invalid_input("sigma is not a permutation");
    seen[s] = true;
  }
  if (g.t.size() != g.sigma.size()) throw invalid_input("torus size mismatch");
  for (auto x : g.t) {
    if (x == 0 || x >= f.q()) throw invalid_input("torus entries must be nonzero field elements");
  }
}

/* Defined on every square matrix; the orbit structure of interest lives
 * on GL_n, and the action sends nonsingular matrices to nonsingular ones
 * (the determinant picks up a nonzero scalar). */
inline Mat act(const Field& f, const GroupElement& g, const Mat& a) {
  int n = g.n();
  if (a.rows() != n || a.cols() != n) throw invalid_input("dimension mismatch in group action");
  Mat r(f, n, n);
  for (int i = 0; i < n; ++i) {
    FqElem ti_inv = f.inv(g.t[i]);
    for (int j = 0; j < n; ++j) {
      FqElem v = f.mul(a.at(g.sigma[i], g.sigma[j]), f.sqr(g.t[j]));
      r.at(i, j) = f.mul(ti_inv, v);
    }
  }
  return r;
}

/* Composition chosen so that act(compose(g,h), A) = act(g, act(h, A)). */
inline GroupElement compose(const Field& f, const GroupElement& g, const GroupElement& h) {
  int n = g.n();
  if (h.n() != n) throw invalid_input("composing elements of different degree");
  GroupElement r;
  r.sigma.resize(n);
  r.t.resize(n);
  for (int i = 0; i < n; ++i) {
    r.sigma[i] = h.sigma[g.sigma[i]];
    r.t[i] = f.mul(h.t[g.sigma[i]], g.t[i]);
  }
  return r;
}

inline GroupElement invert(const Field& f, const GroupElement& g) {
  int n = g.n();
  GroupElement r;
  r.sigma.resize(n);
  r.t.resize(n);
  for (int i = 0; i < n; ++i) r.sigma[g.sigma[i]] = static_cast<std::uint8_t>(i);
  for (int i = 0; i < n; ++i) r.t[i] = f.inv(g.t[r.sigma[i]]);
  return r;
}

/* Visits all n!(q-1)^n group elements: sigma in lexicographic one-line
 * order, torus vectors in lexicographic order within each sigma. */
template <typename Fn>
void for_each_group_element(const Field& f, int n, Fn&& fn) {
  std::vector<std::uint8_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  const std::uint64_t nz = f.q() - 1;
  std::uint64_t torus_count = 1;
  for (int i = 0; i < n; ++i) torus_count *= nz;
  do {
    GroupElement g;
    g.sigma = sigma;
    g.t.assign(n, f.one());
    for (std::uint64_t code = 0; code < torus_count; ++code) {
      std::uint64_t c = code;
      for (int i = n - 1; i >= 0; --i) {
        g.t[i] = static_cast<FqElem>(1 + c % nz);
        c /= nz;
      }
      fn(g);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

struct OrbitPartition {
  std::vector<Mat> representatives;     // least matrix of each orbit, in scan order
  std::vector<std::uint64_t> orbit_sizes;
  BigUint total;                        // sum of sizes, must equal |GL_n|
  BigUint group_order;
};

/* Direct orbit scan: walk GL_n in lexicographic order, expand each fresh
 * matrix into its full orbit. The first matrix seen in an orbit is the
 * least one, so representatives are canonical. With use_generators the
 * orbit is grown by closure under a small generating set instead of by
 * applying every group element. */
inline OrbitPartition enumerate_orbits(const Field& f, int n, std::uint64_t budget,
                                       bool use_generators = false) {
  if (!pow_within(f.q(), n * n, budget)) {
    // name the feasible envelope at this budget
    int max_n = 0;
    while (max_n < kMaxDim && pow_within(f.q(), (max_n + 1) * (max_n + 1), budget)) ++max_n;
    std::uint64_t max_q = 0;
    for (std::uint64_t qq = 2; qq <= 65536 && pow_within(qq, n * n, budget); ++qq) max_q = qq;
    bool printable = pow_within(f.q(), n * n, ~0ULL);
    std::string space_str =
        printable ? BigUint(f.q()).pow(static_cast<unsigned>(n * n)).to_string()
                  : "q^" + std::to_string(n * n);
    throw budget_exceeded(
        "orbit enumeration needs budget " + space_str + " > " + std::to_string(budget) +
            "; at this budget the limits are n <= " + std::to_string(max_n) + " for q = " +
            std::to_string(f.q()) + ", or q <= " + std::to_string(max_q) + " for n = " +
            std::to_string(n),
        printable ? BigUint(f.q()).pow(static_cast<unsigned>(n * n)).as_u64() : ~0ULL, budget);
  }
  BigUint space = BigUint(f.q()).pow(static_cast<unsigned>(n * n));
  std::vector<bool> visited(space.as_u64(), false);

  OrbitPartition out;
  out.group_order = group_order(f, n);
  out.total = 0;

  std::vector<GroupElement> generators;
  if (use_generators) {
    if (n >= 2) {
      GroupElement swap01 = group_identity(f, n);
      std::swap(swap01.sigma[0], swap01.sigma[1]);
      generators.push_back(swap01);
      GroupElement cyc = group_identity(f, n);
      for (int i = 0; i < n; ++i) cyc.sigma[i] = static_cast<std::uint8_t>((i + 1) % n);
      generators.push_back(cyc);
    }
    FqElem gen = 0;
    for (std::uint64_t x = 1; x < f.q(); ++x) {
      if (f.order(static_cast<FqElem>(x)) == f.q() - 1) {
        gen = static_cast<FqElem>(x);
        break;
      }
    }
    for (int i = 0; i < n && f.q() > 2; ++i) {
      GroupElement tg = group_identity(f, n);
      tg.t[i] = gen;
      generators.push_back(tg);
    }
  }

  enumerate_gl(f, n, budget, [&](const Mat& a) {
    std::uint64_t code = a.encode();
    if (visited[code]) return;
    std::unordered_set<std::uint64_t> orbit;
    if (use_generators) {
      std::deque<Mat> frontier{a};
      orbit.insert(code);
      visited[code] = true;
      while (!frontier.empty()) {
        Mat cur = frontier.front();
        frontier.pop_front();
        for (const auto& g : generators) {
          Mat img = act(f, g, cur);
          std::uint64_t ic = img.encode();
          if (orbit.insert(ic).second) {
            visited[ic] = true;
            frontier.push_back(img);
          }
        }
      }
    } else {
      for_each_group_element(f, n, [&](const GroupElement& g) {
        std::uint64_t ic = act(f, g, a).encode();
        orbit.insert(ic);
        visited[ic] = true;
      });
    }
    out.representatives.push_back(a);
    out.orbit_sizes.push_back(orbit.size());
    out.total += static_cast<unsigned long long>(orbit.size());
  });
  return out;
}

}  // namespace evocount

#endif

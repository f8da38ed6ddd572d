#ifndef EVOCOUNT_BURNSIDE_HPP
#define EVOCOUNT_BURNSIDE_HPP

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <exception>
#include <thread>
#include <unordered_map>
#include <vector>

#include "evocount/bigint.hpp"
#include "evocount/count_report.hpp"
#include "evocount/errors.hpp"
#include "evocount/field.hpp"
#include "evocount/matrix.hpp"
#include "evocount/partitions.hpp"

namespace evocount {

struct BurnsideOptions {
  std::uint64_t torus_budget = 1ull << 32;  // cap on (q-1)^n
  int free_dim_budget = 16;                 // cap on free kernel dimensions per (mu, t)
  unsigned threads = 0;                     // 0 = hardware concurrency
};

namespace detail {

/* The matrix t^2 sigma^-1 has a single entry per row: row i carries
 * t_i^2 in column sigma(i). Powers stay in this shape, which keeps the
 * fixed-point machinery cheap. */
struct ScaledPerm {
  int n = 0;
  std::array<int, kMaxDim> col{};
  std::array<FqElem, kMaxDim> val{};

  static ScaledPerm action_matrix(const Field& f, const std::vector<std::uint8_t>& sigma,
                                  const std::vector<FqElem>& t) {
    ScaledPerm m;
    m.n = static_cast<int>(sigma.size());
    for (int i = 0; i < m.n; ++i) {
      m.col[i] = sigma[i];
      m.val[i] = f.sqr(t[i]);
    }
    return m;
  }

  ScaledPerm compose(const Field& f, const ScaledPerm& o) const {
    // (this * o)[i][j]: nonzero only at j = o.col[col[i]]
    ScaledPerm r;
    r.n = n;
    for (int i = 0; i < n; ++i) {
      r.col[i] = o.col[col[i]];
      r.val[i] = f.mul(val[i], o.val[col[i]]);
    }
    return r;
  }

  ScaledPerm power(const Field& f, int e) const {
    ScaledPerm r;
    r.n = n;
    for (int i = 0; i < n; ++i) {
      r.col[i] = i;
      r.val[i] = f.one();
    }
    for (int k = 0; k < e; ++k) r = r.compose(f, *this);
    return r;
  }

  Row apply(const Field& f, const Row& v) const {
    Row out{};
    for (int i = 0; i < n; ++i) out[i] = f.mul(val[i], v[col[i]]);
    return out;
  }

  /* dense c*I - this */
  Mat scaled_identity_minus(const Field& f, FqElem c) const {
    Mat r(f, n, n);
    for (int i = 0; i < n; ++i) {
      r.at(i, i) = c;
      r.at(i, col[i]) = f.sub(r.at(i, col[i]), val[i]);
    }
    return r;
  }
};

/* Reduced row echelon basis of a row span; the row set in pivot order is
 * a canonical key for the subspace. */
struct RowSpan {
  int n = 0;
  int dim = 0;
  std::array<Row, kMaxDim> rows{};
  std::array<int, kMaxDim> piv{};

  explicit RowSpan(int n_) : n(n_) {}

  bool insert(const Field& f, Row v) {
    for (int k = 0; k < dim; ++k) {
      FqElem c = v[piv[k]];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(c, rows[k][j]));
    }
    int pv = -1;
    for (int j = 0; j < n; ++j) {
      if (v[j] != 0) {
        pv = j;
        break;
      }
    }
    if (pv < 0) return false;
    FqElem inv = f.inv(v[pv]);
    for (int j = 0; j < n; ++j) v[j] = f.mul(v[j], inv);
    for (int k = 0; k < dim; ++k) {
      FqElem c = rows[k][pv];
      if (c == 0) continue;
      for (int j = 0; j < n; ++j) rows[k][j] = f.sub(rows[k][j], f.mul(c, v[j]));
    }
    int pos = dim;
    while (pos > 0 && piv[pos - 1] > pv) {
      rows[pos] = rows[pos - 1];
      piv[pos] = piv[pos - 1];
      --pos;
    }
    rows[pos] = v;
    piv[pos] = pv;
    ++dim;
    return true;
  }

  std::array<std::uint64_t, kMaxDim> key(std::uint64_t q) const {
    std::array<std::uint64_t, kMaxDim> k{};
    for (int r = 0; r < dim; ++r) {
      std::uint64_t code = 0;
      for (int j = 0; j < n; ++j) code = code * q + rows[r][j];
      k[r] = code;
    }
    return k;
  }
};

struct SpanKeyHash {
  std::size_t operator()(const std::array<std::uint64_t, kMaxDim>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/* One cycle of the canonical permutation: the free vector y ranges over
 * the kernel of c*I - M^len; the cycle's rows of the fixed matrix are
 * M^(len-1) y, ..., M y, y up to nonzero row scalings that do not affect
 * nonsingularity. */
struct CycleSystem {
  int len = 0;
  std::vector<Row> kernel;  // basis
  std::vector<std::array<Row, kMaxDim>> candidates;  // internally independent bundles

  void build_candidates(const Field& f, const ScaledPerm& m, int n) {
    std::uint64_t count = 1;
    for (size_t i = 0; i < kernel.size(); ++i) count *= f.q();
    candidates.clear();
    std::vector<FqElem> coeff(kernel.size(), 0);
    for (std::uint64_t idx = 1; idx < count; ++idx) {
      std::uint64_t x = idx;
      for (size_t i = 0; i < kernel.size(); ++i) {
        coeff[i] = static_cast<FqElem>(x % f.q());
        x /= f.q();
      }
      Row y{};
      for (size_t i = 0; i < kernel.size(); ++i) {
        if (coeff[i] == 0) continue;
        for (int j = 0; j < n; ++j) y[j] = f.add(y[j], f.mul(coeff[i], kernel[i][j]));
      }
      std::array<Row, kMaxDim> bundle{};
      bundle[len - 1] = y;
      for (int s = len - 2; s >= 0; --s) bundle[s] = m.apply(f, bundle[s + 1]);
      RowSpan self(n);
      bool independent = true;
      for (int s = 0; s < len && independent; ++s) independent = self.insert(f, bundle[s]);
      if (independent) candidates.push_back(bundle);
    }
  }
};

}  // namespace detail

/* Necessary condition on t for sigma(mu) t to have any fixed point in
 * GL_n: every diagonal block of the fixed-point system must be singular.
 * For 1-cycles this is the scalar product test, for longer cycles the
 * determinant test on c*I - M^len. */
inline bool torus_admissible(const Field& f, const Partition& mu, const std::vector<FqElem>& t) {
  if (static_cast<int>(t.size()) != mu.n) throw invalid_input("torus vector of wrong length");
  for (auto x : t)
    if (x == 0) throw invalid_input("torus entries must be nonzero");

  const int r = static_cast<int>(mu.parts.size());
  int r1 = 0;  // number of length-1 parts; they come first
  while (r1 < r && mu.parts[r1] == 1) ++r1;

  for (int i = 0; i < r1; ++i) {
    FqElem ti = t[mu.offsets[i]];
    FqElem prod = f.one();
    for (int j = 0; j < r1; ++j) {
      prod = f.mul(prod, f.sub(ti, f.sqr(t[mu.offsets[j]])));
    }
    for (int j = r1; j < r; ++j) {
      FqElem lhs = f.pow(ti, static_cast<std::uint64_t>(mu.parts[j]));
      FqElem rhs = f.one();
      for (int s = 0; s < mu.parts[j]; ++s) rhs = f.mul(rhs, f.sqr(t[mu.offsets[j] + s]));
      prod = f.mul(prod, f.sub(lhs, rhs));
    }
    if (prod != 0) return false;
  }

  if (r1 < r) {
    detail::ScaledPerm m = detail::ScaledPerm::action_matrix(f, mu.sigma, t);
    for (int i = r1; i < r; ++i) {
      FqElem c = f.one();
      for (int s = 0; s < mu.parts[i]; ++s) c = f.mul(c, t[mu.offsets[i] + s]);
      detail::ScaledPerm mp = m.power(f, mu.parts[i]);
      if (mp.scaled_identity_minus(f, c).det() != 0) return false;
    }
  }
  return true;
}

/* b(mu, t): the number of nonsingular matrices fixed by sigma(mu) t.
 *
 * Pipeline: reject inadmissible t, then parametrize the solution space of
 * the fixed-point equations cycle by cycle (one free kernel vector per
 * cycle), and count the parameter choices whose assembled rows are
 * linearly independent. Counting walks the cycles and aggregates partial
 * row spans, so equal spans share the bookkeeping instead of being
 * enumerated solution by solution. Two shortcuts cover the heavy cases:
 * a fully unconstrained system is |GL_n| outright, and coordinate
 * kernels that split into complete blocks give a product of |GL_k|. */
inline BigUint count_fixed_points(const Field& f, const Partition& mu,
                                  const std::vector<FqElem>& t,
                                  const BurnsideOptions& opts = {}) {
  if (!torus_admissible(f, mu, t)) return 0;

  const int n = mu.n;
  detail::ScaledPerm m = detail::ScaledPerm::action_matrix(f, mu.sigma, t);

  std::vector<detail::CycleSystem> cycles(mu.parts.size());
  int free_dims = 0;
  for (size_t i = 0; i < mu.parts.size(); ++i) {
    cycles[i].len = mu.parts[i];
    FqElem c = f.one();
    for (int s = 0; s < mu.parts[i]; ++s) c = f.mul(c, t[mu.offsets[i] + s]);
    detail::ScaledPerm mp = m.power(f, mu.parts[i]);
    cycles[i].kernel = mp.scaled_identity_minus(f, c).kernel();
    if (cycles[i].kernel.empty()) return 0;
    free_dims += static_cast<int>(cycles[i].kernel.size());
  }

  const bool all_singletons = mu.parts.front() == 1 && mu.parts.back() == 1;
  if (all_singletons) {
    bool all_full = true;
    for (const auto& c : cycles) all_full &= static_cast<int>(c.kernel.size()) == n;
    if (all_full) return gl_order(f, n);

    // coordinate kernels splitting into complete balanced blocks
    bool coordinate = true;
    std::vector<std::uint64_t> support(n, 0);  // bitmask of allowed columns per row
    for (int i = 0; i < n && coordinate; ++i) {
      for (const Row& b : cycles[i].kernel) {
        int nonzero = -1;
        for (int j = 0; j < n; ++j) {
          if (b[j] != 0) {
            if (nonzero >= 0) {
              coordinate = false;
              break;
            }
            nonzero = j;
          }
        }
        if (nonzero >= 0) support[i] |= 1ull << nonzero;
      }
    }
    if (coordinate) {
      // union-find over rows via shared columns
      std::vector<int> parent(n);
      for (int i = 0; i < n; ++i) parent[i] = i;
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (support[i] & support[j]) parent[find(i)] = find(j);
      bool blocky = true;
      BigUint product(1);
      std::vector<bool> done(n, false);
      for (int i = 0; i < n && blocky; ++i) {
        int root = find(i);
        if (done[root]) continue;
        done[root] = true;
        std::uint64_t cols = 0;
        int rows_in = 0;
        for (int j = 0; j < n; ++j) {
          if (find(j) == root) {
            cols |= support[j];
            ++rows_in;
          }
        }
        for (int j = 0; j < n; ++j) {
          if (find(j) == root && support[j] != cols) blocky = false;
        }
        if (rows_in != __builtin_popcountll(cols)) blocky = false;
        if (blocky) product *= gl_order(f, rows_in);
      }
      if (blocky) return product;
    }
  }

  if (free_dims > opts.free_dim_budget) {
    throw budget_exceeded("fixed-point solution space has " + std::to_string(free_dims) +
                              " free dimensions, budget is " + std::to_string(opts.free_dim_budget),
                          static_cast<unsigned long long>(free_dims),
                          static_cast<unsigned long long>(opts.free_dim_budget));
  }
  for (const auto& c : cycles) {
    BigUint enumerated = BigUint(f.q()).pow(static_cast<unsigned>(c.kernel.size()));
    if (enumerated > BigUint(1ull << 22)) {
      throw budget_exceeded("a cycle kernel has " + enumerated.to_string() +
                                " vectors, too many to enumerate",
                            enumerated.fits_u64() ? enumerated.as_u64() : ~0ULL, 1ull << 22);
    }
  }

  std::sort(cycles.begin(), cycles.end(),
            [](const detail::CycleSystem& a, const detail::CycleSystem& b) {
              return a.kernel.size() < b.kernel.size();
            });
  for (auto& c : cycles) c.build_candidates(f, m, n);

  struct State {
    detail::RowSpan span;
    unsigned __int128 count;
  };
  std::vector<State> states;
  states.push_back({detail::RowSpan(n), 1});

  const std::uint64_t q = f.q();
  for (size_t ci = 0; ci < cycles.size(); ++ci) {
    const auto& cyc = cycles[ci];
    const bool last = ci + 1 == cycles.size();
    if (last) {
      unsigned __int128 total = 0;
      for (const auto& st : states) {
        std::uint64_t fits = 0;
        for (const auto& bundle : cyc.candidates) {
          detail::RowSpan trial = st.span;
          bool ok = true;
          for (int s = 0; s < cyc.len && ok; ++s) ok = trial.insert(f, bundle[s]);
          fits += ok;
        }
        total += st.count * fits;
      }
      return BigUint::from_u128(total);
    }
    std::unordered_map<std::array<std::uint64_t, kMaxDim>, std::size_t, detail::SpanKeyHash> index;
    std::vector<State> next;
    for (const auto& st : states) {
      for (const auto& bundle : cyc.candidates) {
        detail::RowSpan trial = st.span;
        bool ok = true;
        for (int s = 0; s < cyc.len && ok; ++s) ok = trial.insert(f, bundle[s]);
        if (!ok) continue;
        auto key = trial.key(q);
        auto it = index.find(key);
        if (it == index.end()) {
          index.emplace(key, next.size());
          next.push_back({trial, st.count});
        } else {
          next[it->second].count += st.count;
        }
      }
    }
    states = std::move(next);
    if (states.empty()) return 0;
  }
  // partitions are nonempty, so the loop always returns via the last cycle
  throw internal_error("unreachable fixed-point path");
}

/* N(n, F_q) by Burnside's lemma over the canonical cycle types:
 * N = sum_mu B(mu) / (q-1)^n with B(mu) = sum_t b(mu, t) / d(mu).
 * Both divisions are exact by construction and checked. */
inline CountReport count_classes_burnside(const Field& f, int n, const BurnsideOptions& opts = {}) {
  if (n < 1 || n > kMaxDim) throw invalid_input("dimension out of range");
  auto start = std::chrono::steady_clock::now();

  const std::uint64_t nz = f.q() - 1;
  BigUint torus_size = BigUint(nz).pow(static_cast<unsigned>(n));
  if (torus_size > BigUint(opts.torus_budget)) {
    throw budget_exceeded("torus of size " + torus_size.to_string() + " exceeds budget",
                          torus_size.fits_u64() ? torus_size.as_u64() : ~0ULL, opts.torus_budget);
  }
  const std::uint64_t t_count = torus_size.as_u64();

  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, t_count));

  CountReport report;
  report.n = n;
  report.q = f.q();
  report.p = f.p();
  report.m = f.m();
  report.method = "burnside";

  BigUint grand_total(0);
  for (const Partition& mu : partitions(n)) {
    std::vector<BigUint> partial(threads, BigUint(0));
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned w) {
      try {
        std::vector<FqElem> t(n);
        for (std::uint64_t idx = w; idx < t_count; idx += threads) {
          std::uint64_t x = idx;
          for (int i = n - 1; i >= 0; --i) {
            t[i] = static_cast<FqElem>(1 + x % nz);
            x /= nz;
          }
          partial[w] += count_fixed_points(f, mu, t, opts);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);

    BigUint sum(0);
    for (const auto& x : partial) sum += x;
    BigUint bmu = sum.div_exact(mu.d, "B(mu) = sum_t b(mu,t) / d(mu)");
    grand_total += bmu;
    report.contributions.push_back({mu, bmu});
  }
  report.N = grand_total.div_exact(torus_size, "N = sum_mu B(mu) / (q-1)^n");
  report.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
          .count());
  return report;
}

}  // namespace evocount

#endif

#include <doctest.h>

#include <vector>

#include "evocount/burnside.hpp"

using namespace evocount;

namespace {

/* Independent route to b(mu, t): write the n^2 x n^2 linear system
 *   t_i x_{ij} - t_j^2 x_{mu(i) mu(j)} = 0
 * solve it with a self-contained eliminator over plain vectors, then walk
 * the whole solution space and count nonsingular matrices. Shares no code
 * with the cycle-structured counting path. */
long long dense_system_count(const Field& f, const Partition& mu, const std::vector<FqElem>& t,
                             int max_dim, bool* skipped_dim = nullptr) {
  const int n = mu.n;
  const int vars = n * n;
  std::vector<std::vector<FqElem>> rows;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<FqElem> eq(vars, 0);
      int a = i * n + j;
      int b = mu.sigma[i] * n + mu.sigma[j];
      eq[a] = f.add(eq[a], t[i]);
      eq[b] = f.sub(eq[b], f.sqr(t[j]));
      bool all_zero = true;
      for (FqElem c : eq) all_zero &= c == 0;
      if (!all_zero) rows.push_back(eq);
    }
  }

  // reduced row echelon form
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < vars && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    FqElem inv = f.inv(rows[rank][col]);
    for (int c = 0; c < vars; ++c) rows[rank][c] = f.mul(rows[rank][c], inv);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      FqElem factor = rows[r][col];
      for (int c = 0; c < vars; ++c) {
        rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(vars, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < vars; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  int dim = static_cast<int>(free_cols.size());

  std::vector<std::vector<FqElem>> basis;
  for (int fc : free_cols) {
    std::vector<FqElem> v(vars, 0);
    v[fc] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = f.neg(rows[r][fc]);
    basis.push_back(v);
  }

  // a matrix row that is zero in every basis vector is zero in every
  // solution, so no solution is nonsingular
  for (int i = 0; i < n; ++i) {
    bool row_dead = true;
    for (const auto& v : basis) {
      for (int j = 0; j < n; ++j) {
        if (v[i * n + j] != 0) row_dead = false;
      }
    }
    if (row_dead) return 0;
  }

  if (dim > max_dim) {
    if (skipped_dim) *skipped_dim = true;
    return -1;  // caller decides
  }

  long long count = 0;
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) total *= f.q();
  std::vector<FqElem> coeff(dim);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    for (int i = 0; i < dim; ++i) {
      coeff[i] = static_cast<FqElem>(x % f.q());
      x /= f.q();
    }
    Mat a(f, n, n);
    for (int i = 0; i < dim; ++i) {
      if (coeff[i] == 0) continue;
      for (int v = 0; v < vars; ++v) {
        if (basis[i][v] == 0) continue;
        a.at(v / n, v % n) = f.add(a.at(v / n, v % n), f.mul(coeff[i], basis[i][v]));
      }
    }
    if (a.det() != 0) ++count;
  }
  return count;
}

std::vector<std::vector<FqElem>> all_torus(const Field& f, int n) {
  std::uint64_t nz = f.q() - 1;
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= nz;
  std::vector<std::vector<FqElem>> out;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<FqElem> t(n);
    std::uint64_t x = code;
    for (int i = n - 1; i >= 0; --i) {
      t[i] = static_cast<FqElem>(1 + x % nz);
      x /= nz;
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("fixed-point counts match an independent dense-system solve") {
  struct Inst {
    std::uint64_t q;
    int n;
    int max_dim;
  };
  for (auto [q, n, max_dim] : std::vector<Inst>{{2, 3, 9}, {3, 3, 9}, {4, 3, 8},
                                                {2, 4, 12}, {3, 4, 10}, {4, 4, 9}}) {
    std::uint64_t p = 0;
    int m = 0;
    REQUIRE(factor_prime_power(q, &p, &m));
    Field f = Field::make(p, m);
    int compared = 0, skipped = 0;
    for (const Partition& mu : partitions(n)) {
      for (const auto& t : all_torus(f, n)) {
        long long slow = dense_system_count(f, mu, t, max_dim);
        if (slow < 0) {
          ++skipped;
          continue;
        }
        BigUint fast = count_fixed_points(f, mu, t);
        CHECK_MESSAGE(fast == BigUint(static_cast<unsigned long long>(slow)),
                      "q=", q, " mu=", mu.to_string(), " engine=", fast.to_string(),
                      " dense=", slow);
        ++compared;
      }
    }
    CHECK(compared > 0);
  }
}

TEST_CASE("dense-system oracle pins the {1,3} count at q = 4 and q = 5") {
  // 3 | (q-1) branch at q = 4: each admissible t contributes q(q+1)(q-1)^4
  {
    Field f4 = Field::make(2, 2);
    Partition mu;
    for (const auto& part : partitions(4))
      if (part.parts == std::vector<int>{1, 3}) mu = part;
    long long per_t = -1;
    int admissible = 0;
    for (const auto& t : all_torus(f4, 4)) {
      if (!torus_admissible(f4, mu, t)) continue;
      long long got = dense_system_count(f4, mu, t, 8);
      REQUIRE(got >= 0);
      if (got > 0) {
        ++admissible;
        if (per_t < 0) per_t = got;
        CHECK(per_t == got);
      }
    }
    CHECK(admissible == 9);     // (q-1)^2 admissible t
    CHECK(per_t == 1620);       // q(q+1)(q-1)^4 = 4*5*81
  }
  // 3 does not divide q-1 at q = 5: q(q+1)^2(q-1)^3
  {
    Field f5 = Field::make(5, 1);
    Partition mu;
    for (const auto& part : partitions(4))
      if (part.parts == std::vector<int>{1, 3}) mu = part;
    std::vector<FqElem> t{1, 2, 4, 2};  // t_2 t_3 t_4 = 16 = 1
    REQUIRE(torus_admissible(f5, mu, t));
    long long got = dense_system_count(f5, mu, t, 8);
    CHECK(got == 11520);  // 5 * 36 * 64
    CHECK(count_fixed_points(f5, mu, t) == BigUint(11520u));
  }
}

TEST_CASE("dense sweep pins the disputed dimension-4 contributions at q = 5") {
  // N(4, F_5) turns on whether B({1,1,1,1}) picks up a 24(q-1)^4 term
  // (it cannot: F_5^x has no elements of order 5) and whether the {4}
  // count per admissible t is (q-1)^4 = 256 or (q-1)^3(q+1) = 384
  // (4 | q-1, so y^4 - 1 splits and the Vandermonde count gives 256).
  // Brute-force both partitions over every torus vector.
  Field f5 = Field::make(5, 1);

  Partition ones, four;
  for (const auto& part : partitions(4)) {
    if (part.parts == std::vector<int>{1, 1, 1, 1}) ones = part;
    if (part.parts == std::vector<int>{4}) four = part;
  }

  BigUint sum_ones(0);
  for (const auto& t : all_torus(f5, 4)) {
    bool skipped = false;
    long long got = dense_system_count(f5, ones, t, 8, &skipped);
    if (skipped) {
      // only the identity torus leaves the whole space free
      REQUIRE(t == std::vector<FqElem>{1, 1, 1, 1});
      sum_ones += gl_order(f5, 4);
      continue;
    }
    REQUIRE(got >= 0);
    sum_ones += static_cast<unsigned long long>(got);
    CHECK(got == 0);  // no other torus vector fixes anything
  }
  CHECK(sum_ones == gl_order(f5, 4));
  CHECK(sum_ones.div_exact(24u) == BigUint(4836000000ull));  // B({1,1,1,1}); no extra term

  BigUint sum_four(0);
  int admissible = 0;
  for (const auto& t : all_torus(f5, 4)) {
    bool skipped = false;
    long long got = dense_system_count(f5, four, t, 8, &skipped);
    REQUIRE(!skipped);
    REQUIRE(got >= 0);
    if (got > 0) {
      ++admissible;
      CHECK(got == 256);  // (q-1)^4 per admissible t, not 384
    }
    sum_four += static_cast<unsigned long long>(got);
  }
  CHECK(admissible == 64);  // (q-1)^3 vectors with t1 t2 t3 t4 = 1
  CHECK(sum_four.div_exact(4u) == BigUint(4096u));  // B({4})

  // both agree with the cycle-structured engine
  CHECK(count_classes_burnside(f5, 4).contributions[0].value == BigUint(4836000000ull));
  CHECK(count_classes_burnside(f5, 4).contributions[4].value == BigUint(4096u));
}

TEST_CASE("dense-system oracle confirms the dimension-10 {1,1,2} case at q = 4") {
  Field f4 = Field::make(2, 2);
  Partition mu;
  for (const auto& part : partitions(4))
    if (part.parts == std::vector<int>{1, 1, 2}) mu = part;
  std::vector<FqElem> t{1, 1, 2, 3};  // codes of 1, 1, g, g^2 with g g^2 = 1
  REQUIRE(f4.mul(2, 3) == 1);
  REQUIRE(torus_admissible(f4, mu, t));
  long long dense = dense_system_count(f4, mu, t, 10);
  CHECK(dense == 552960);  // q^6 (q-1)^3 (q+1)
  CHECK(count_fixed_points(f4, mu, t) == BigUint(552960u));
}

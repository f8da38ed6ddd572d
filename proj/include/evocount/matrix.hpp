#ifndef EVOCOUNT_MATRIX_HPP
#define EVOCOUNT_MATRIX_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "evocount/bigint.hpp"
#include "evocount/errors.hpp"
#include "evocount/field.hpp"
#include "evocount/fq_poly.hpp"

namespace evocount {

/* Hard cap on matrix dimensions. Everything here is exhaustive-search
 * scale; 8 leaves room for probing beyond the n <= 4 formulas. */
constexpr int kMaxDim = 8;

using Row = std::array<FqElem, kMaxDim>;

/* Dense matrix over F_q with inline storage and value semantics. */
class Mat {
 public:
  Mat() = default;
  Mat(const Field& f, int rows, int cols) : f_(&f), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0 || rows > kMaxDim || cols > kMaxDim)
      throw invalid_input("matrix dimension out of range");
    e_.fill(0);
  }

  static Mat identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  const Field& field() const { return *f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  FqElem& at(int i, int j) { return e_[i * cols_ + j]; }
  FqElem at(int i, int j) const { return e_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int i = 0; i < rows_ * cols_; ++i)
      if (e_[i] != o.e_[i]) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  /* row-major lexicographic order on entry codes; the canonical orbit
   * representative is the least matrix in this order */
  bool lex_less(const Mat& o) const {
    for (int i = 0; i < rows_ * cols_; ++i) {
      if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
    }
    return false;
  }

  /* mixed-radix code with entry (0,0) in the most significant place, so
   * numeric order on codes equals lex order on matrices */
  std::uint64_t encode() const {
    std::uint64_t code = 0;
    for (int i = 0; i < rows_ * cols_; ++i) code = code * f_->q() + e_[i];
    return code;
  }

  static Mat decode(const Field& f, int rows, int cols, std::uint64_t code) {
    Mat m(f, rows, cols);
    for (int i = rows * cols - 1; i >= 0; --i) {
      m.e_[i] = static_cast<FqElem>(code % f.q());
      code /= f.q();
    }
    return m;
  }

  Mat operator*(const Mat& o) const {
    require_same_field(o);
    if (cols_ != o.rows_) throw invalid_input("dimension mismatch in matrix product");
    Mat r(*f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        FqElem a = at(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          r.at(i, j) = f_->add(r.at(i, j), f_->mul(a, o.at(k, j)));
        }
      }
    }
    return r;
  }

  FqElem det() const {
    if (rows_ != cols_) throw invalid_input("determinant of a non-square matrix");
    Mat w(*this);
    const Field& F = *f_;
    FqElem d = F.one();
    for (int col = 0; col < cols_; ++col) {
      int piv = -1;
      for (int r = col; r < rows_; ++r) {
        if (w.at(r, col) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return F.zero();
      if (piv != col) {
        w.swap_rows(piv, col);
        d = F.neg(d);
      }
      FqElem pv = w.at(col, col);
      d = F.mul(d, pv);
      FqElem pv_inv = F.inv(pv);
      for (int r = col + 1; r < rows_; ++r) {
        FqElem c = w.at(r, col);
        if (c == 0) continue;
        FqElem factor = F.mul(c, pv_inv);
        for (int j = col; j < cols_; ++j) {
          w.at(r, j) = F.sub(w.at(r, j), F.mul(factor, w.at(col, j)));
        }
      }
    }
    return d;
  }

  int rank() const {
    Mat w(*this);
    const Field& F = *f_;
    int rk = 0;
    for (int col = 0; col < cols_ && rk < rows_; ++col) {
      int piv = -1;
      for (int r = rk; r < rows_; ++r) {
        if (w.at(r, col) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) continue;
      w.swap_rows(piv, rk);
      FqElem pv_inv = F.inv(w.at(rk, col));
      for (int r = rk + 1; r < rows_; ++r) {
        FqElem c = w.at(r, col);
        if (c == 0) continue;
        FqElem factor = F.mul(c, pv_inv);
        for (int j = col; j < cols_; ++j) {
          w.at(r, j) = F.sub(w.at(r, j), F.mul(factor, w.at(rk, j)));
        }
      }
      ++rk;
    }
    return rk;
  }

  std::optional<Mat> inverse() const {
    if (rows_ != cols_) throw invalid_input("inverse of a non-square matrix");
    const Field& F = *f_;
    Mat w(*this);
    Mat inv = identity(F, rows_);
    for (int col = 0; col < cols_; ++col) {
      int piv = -1;
      for (int r = col; r < rows_; ++r) {
        if (w.at(r, col) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return std::nullopt;
      w.swap_rows(piv, col);
      inv.swap_rows(piv, col);
      FqElem pv_inv = F.inv(w.at(col, col));
      for (int j = 0; j < cols_; ++j) {
        w.at(col, j) = F.mul(w.at(col, j), pv_inv);
        inv.at(col, j) = F.mul(inv.at(col, j), pv_inv);
      }
      for (int r = 0; r < rows_; ++r) {
        if (r == col) continue;
        FqElem c = w.at(r, col);
        if (c == 0) continue;
        for (int j = 0; j < cols_; ++j) {
          w.at(r, j) = F.sub(w.at(r, j), F.mul(c, w.at(col, j)));
          inv.at(r, j) = F.sub(inv.at(r, j), F.mul(c, inv.at(col, j)));
        }
      }
    }
    return inv;
  }

  /* basis of { x : M x = 0 }, x as length-cols vectors */
  std::vector<Row> kernel() const {
    const Field& F = *f_;
    Mat w(*this);
    std::array<int, kMaxDim> pivot_col{};
    int rk = 0;
    for (int col = 0; col < cols_ && rk < rows_; ++col) {
      int piv = -1;
      for (int r = rk; r < rows_; ++r) {
        if (w.at(r, col) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) continue;
      w.swap_rows(piv, rk);
      FqElem pv_inv = F.inv(w.at(rk, col));
      for (int j = col; j < cols_; ++j) w.at(rk, j) = F.mul(w.at(rk, j), pv_inv);
      for (int r = 0; r < rows_; ++r) {
        if (r == rk) continue;
        FqElem c = w.at(r, col);
        if (c == 0) continue;
        for (int j = col; j < cols_; ++j) {
          w.at(r, j) = F.sub(w.at(r, j), F.mul(c, w.at(rk, j)));
        }
      }
      pivot_col[rk] = col;
      ++rk;
    }
    std::array<bool, kMaxDim> is_pivot{};
    for (int r = 0; r < rk; ++r) is_pivot[pivot_col[r]] = true;
    std::vector<Row> basis;
    for (int j = 0; j < cols_; ++j) {
      if (is_pivot[j]) continue;
      Row v{};
      v[j] = F.one();
      for (int r = 0; r < rk; ++r) {
        v[pivot_col[r]] = F.neg(w.at(r, j));
      }
      basis.push_back(v);
    }
    return basis;
  }

  void swap_rows(int r1, int r2) {
    for (int j = 0; j < cols_; ++j) std::swap(at(r1, j), at(r2, j));
  }

  void require_same_field(const Mat& o) const {
    if (!f_->same_field(*o.f_)) throw invalid_input("matrices from different fields");
  }

 private:
  const Field* f_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::array<FqElem, kMaxDim * kMaxDim> e_{};
};

/* |GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i) */
inline BigUint gl_order(const Field& f, int n) {
  BigUint qn = BigUint(f.q()).pow(static_cast<unsigned>(n));
  BigUint r(1);
  BigUint qi(1);
  for (int i = 0; i < n; ++i) {
    r *= qn - qi;
    qi *= f.q();
  }
  return r;
}

/* Streams every nonsingular n x n matrix in row-major lexicographic
 * order. Rows are chosen depth-first with rank pruning, so the work is
 * proportional to the number of independent row prefixes rather than to
 * q^(n^2). Refuses when q^(n^2) exceeds the budget. */
template <typename Fn>
void enumerate_gl(const Field& f, int n, std::uint64_t budget, Fn&& fn) {
  if (n < 1 || n > kMaxDim) throw invalid_input("dimension out of range");
  if (!pow_within(f.q(), n * n, budget)) {
    bool printable = pow_within(f.q(), n * n, ~0ULL);
    std::string space_str = printable
                                ? BigUint(f.q()).pow(static_cast<unsigned>(n * n)).to_string()
                                : "q^" + std::to_string(n * n);
    throw budget_exceeded("GL enumeration needs budget " + space_str + " > " +
                              std::to_string(budget) + " (q^(n^2) entries)",
                          printable ? BigUint(f.q()).pow(static_cast<unsigned>(n * n)).as_u64()
                                    : ~0ULL,
                          budget);
  }
  const std::uint64_t q = f.q();
  std::uint64_t row_count = 1;
  for (int i = 0; i < n; ++i) row_count *= q;

  std::array<Row, kMaxDim> chosen{};
  // echelon copy of the chosen rows, reduced but not normalized
  std::array<Row, kMaxDim> ech{};

  auto decode_row = [&](std::uint64_t code, Row& r) {
    for (int j = n - 1; j >= 0; --j) {
      r[j] = static_cast<FqElem>(code % q);
      code /= q;
    }
  };

  auto reduce = [&](Row v, int depth) -> std::optional<Row> {
    for (int k = 0; k < depth; ++k) {
      int piv = -1;
      for (int j = 0; j < n; ++j) {
        if (ech[k][j] != 0) {
          piv = j;
          break;
        }
      }
      if (v[piv] == 0) continue;
      FqElem c = f.div(v[piv], ech[k][piv]);
      for (int j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(c, ech[k][j]));
    }
    for (int j = 0; j < n; ++j) {
      if (v[j] != 0) return v;
    }
    return std::nullopt;
  };

  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      Mat m(f, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = chosen[i][j];
      fn(m);
      return;
    }
    Row r{};
    for (std::uint64_t code = 0; code < row_count; ++code) {
      decode_row(code, r);
      auto reduced = reduce(r, depth);
      if (!reduced) continue;
      chosen[depth] = r;
      ech[depth] = *reduced;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
}

/* Circulant with first row a_0 .. a_{n-1}; row i is the cyclic right
 * shift of row i-1. */
inline Mat circulant(const Field& f, const std::vector<FqElem>& a) {
  int n = static_cast<int>(a.size());
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = a[((j - i) % n + n) % n];
  return m;
}

/* gcd criterion: the circulant of a is nonsingular iff the polynomial
 * a_0 + a_1 y + ... + a_{n-1} y^(n-1) is coprime to y^n - 1. */
inline bool circulant_nonsingular(const Field& f, const std::vector<FqElem>& a) {
  int n = static_cast<int>(a.size());
  if (n < 1) throw invalid_input("empty circulant");
  std::vector<FqElem> rep(a.begin(), a.end());
  std::vector<FqElem> g = fqpoly::gcd(f, rep, fqpoly::cyclotomic_like(f, n));
  return fqpoly::degree(g) == 0;
}

}  // namespace evocount

#endif

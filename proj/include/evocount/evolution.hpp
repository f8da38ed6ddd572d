#ifndef EVOCOUNT_EVOLUTION_HPP
#define EVOCOUNT_EVOLUTION_HPP

#include <optional>
#include <vector>

#include "evocount/errors.hpp"
#include "evocount/group_action.hpp"
#include "evocount/matrix.hpp"

namespace evocount {

/* An evolution algebra on a natural basis e_1..e_n: e_i e_j = 0 for
 * i != j, and e_i^2 is column i of the structure matrix. The algebra is
 * idempotent exactly when the structure matrix is nonsingular. */
class EvolutionAlgebra {
 public:
  EvolutionAlgebra(const Field& f, Mat a) : f_(&f), a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw invalid_input("structure matrix must be square");
    n_ = a_.rows();
  }

  const Mat& structure_matrix() const { return a_; }
  int dim() const { return n_; }

  /* bilinear product of coordinate vectors:
   * (sum u_i e_i)(sum v_j e_j) = sum_i u_i v_i e_i^2 */
  std::vector<FqElem> multiply(const std::vector<FqElem>& u, const std::vector<FqElem>& v) const {
    if (static_cast<int>(u.size()) != n_ || static_cast<int>(v.size()) != n_)
      throw invalid_input("coordinate vector of wrong length");
    const Field& F = *f_;
    std::vector<FqElem> w(n_, 0);
    for (int i = 0; i < n_; ++i) {
      FqElem uv = F.mul(u[i], v[i]);
      if (uv == 0) continue;
      for (int k = 0; k < n_; ++k) {
        w[k] = F.add(w[k], F.mul(a_.at(k, i), uv));
      }
    }
    return w;
  }

  /* True iff e_1^2..e_n^2 span the whole algebra. Both the span rank and
   * the determinant route are computed; disagreement would mean the
   * elimination code is broken, so it is a hard error. */
  bool is_idempotent() const {
    bool full_rank = a_.rank() == n_;
    bool nonsingular = a_.det() != 0;
    if (full_rank != nonsingular)
      throw internal_error("rank and determinant disagree on idempotency");
    return full_rank;
  }

 private:
  const Field* f_;
  Mat a_;
  int n_;
};

/* Searches the whole group for a witness g with act(g, B) = A; a witness
 * exists iff the algebras of A and B are isomorphic. Sigma is scanned in
 * lexicographic one-line order and t lexicographically, so the returned
 * witness is reproducible. */
inline std::optional<GroupElement> are_isomorphic(const Field& f, const Mat& a, const Mat& b,
                                                  std::uint64_t budget = 1ull << 32) {
  if (a.rows() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols())
    throw invalid_input("isomorphism test needs square matrices of equal size");
  a.require_same_field(b);
  if (a.det() == 0 || b.det() == 0)
    throw invalid_input("isomorphism test is defined for nonsingular structure matrices");
  int n = a.rows();
  BigUint order = group_order(f, n);
  if (order > BigUint(budget)) {
    throw budget_exceeded("group of order " + order.to_string() + " exceeds budget",
                          order.fits_u64() ? order.as_u64() : ~0ULL, budget);
  }
  std::optional<GroupElement> witness;
  for_each_group_element(f, n, [&](const GroupElement& g) {
    if (!witness && act(f, g, b) == a) witness = g;
  });
  return witness;
}

}  // namespace evocount

#endif

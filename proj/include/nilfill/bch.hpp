#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nilfill/algebra.hpp"
#include "nilfill/multipoly.hpp"
#include "nilfill/rational.hpp"

namespace nilfill {

// Exponential coordinates of a group element g = exp(x). The identity is the
// zero vector and inversion is coordinate negation.
using GroupPoint = RatVec;

// One term of the universal BCH (Dynkin) series: coeff * [w1,[w2,...,wm]],
// where letters are 0 = X, 1 = Y and the bracket is right-nested.
struct BchTerm {
  Rational coeff;
  std::vector<std::uint8_t> word;
};

// Universal Dynkin series truncated at total bracket degree `max_degree`.
// Words whose right-nested bracket vanishes identically are dropped.
// The result is cached; the returned reference stays valid.
const std::vector<BchTerm>& bch_series(int max_degree);

// Group law z = log(exp(x) exp(y)) via the Dynkin series truncated at the
// nilpotency class. Exact over the rationals.
GroupPoint bch(const NilpotentAlgebra& a, const GroupPoint& x, const GroupPoint& y);

GroupPoint group_inverse(const GroupPoint& x);

// Same series applied to polynomial coordinate vectors (shared variables).
std::vector<MultiPoly> bch_symbolic(const NilpotentAlgebra& a,
                                    const std::vector<MultiPoly>& left,
                                    const std::vector<MultiPoly>& right);

// left_translate(g, x) = bch(g, x): moves supports through the origin.
inline GroupPoint left_translate(const NilpotentAlgebra& a, const GroupPoint& g,
                                 const GroupPoint& x) {
  return bch(a, g, x);
}

// The unipotent polynomial frame: row i of A lists the coordinates of the
// pulled-back left-invariant field agreeing with e_i at the origin, so
// A = I + (strictly upper triangular part) with entry degrees <= s-1.
// Ainv is the exact inverse, computed from the terminating Neumann series.
struct PolyFrame {
  int n = 0;
  std::vector<std::vector<MultiPoly>> A;
  std::vector<std::vector<MultiPoly>> Ainv;
};

// Builds the frame symbolically: row i = d/dt bch(x, t e_i) at t = 0.
// Verifies the unipotent-triangular shape, the degree bound and A*Ainv = I.
PolyFrame frame(const NilpotentAlgebra& a);

// Lazily computed, shareable frame handle.
class FrameHandle {
 public:
  explicit FrameHandle(const NilpotentAlgebra& a) : alg_(&a) {}
  const PolyFrame& get() const;

 private:
  const NilpotentAlgebra* alg_;
  mutable std::shared_ptr<const PolyFrame> frame_;
};

std::vector<std::vector<MultiPoly>> poly_mat_mul(const std::vector<std::vector<MultiPoly>>& A,
                                                 const std::vector<std::vector<MultiPoly>>& B);

}  // namespace nilfill

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nilfill/rational.hpp"

namespace nilfill {

// Structure constants c_{ij}^k for 1 <= i < j <= n, stored sparsely.
// Antisymmetry is implicit: c_{ji}^k = -c_{ij}^k, c_{ii}^k = 0.
struct StructureConstants {
  int n = 0;
  // (i, j) with i < j (0-based) -> coefficient vector of [e_i, e_j], length n.
  std::map<std::pair<int, int>, RatVec> brackets;

  const RatVec* find(int i, int j) const {
    auto it = brackets.find({i, j});
    return it == brackets.end() ? nullptr : &it->second;
  }
  void set(int i, int j, RatVec v);

  // Bilinear extension of the bracket, generic over the coefficient scalar.
  // Mul(r, k) must multiply a Rational by a K; K needs +, - and a zero made
  // by Zero().
  template <typename K, typename Zero, typename Mul>
  std::vector<K> bracket(const std::vector<K>& u, const std::vector<K>& v, Zero zero,
                         Mul mul) const {
    std::vector<K> out(static_cast<std::size_t>(n), zero());
    for (const auto& [ij, coeffs] : brackets) {
      auto [i, j] = ij;
      // u_i v_j - u_j v_i multiplies c_{ij}^k.
      K w = u[i] * v[j] - u[j] * v[i];
      for (int k = 0; k < n; ++k) {
        if (coeffs[k] == 0) continue;
        out[k] = out[k] + mul(coeffs[k], w);
      }
    }
    return out;
  }

  RatVec bracket(const RatVec& u, const RatVec& v) const;
  std::vector<double> bracket_d(const std::vector<double>& u,
                                const std::vector<double>& v) const;
};

// A validated nilpotent Lie algebra in a triangular basis:
// [e_i, e_j] lies in span{e_k : k > j} for all i < j.
class NilpotentAlgebra {
 public:
  int dim() const { return c_.n; }
  int nilpotency_class() const { return class_; }
  const StructureConstants& constants() const { return c_; }

  // depth(i) = the lower-central-series step at which e_i enters;
  // W_d = span{e_i : depth(i) == d}, d in 1..s.
  int depth(int i) const { return depth_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& depths() const { return depth_; }
  int grading_dim(int d) const;  // dim W_d
  // dims of the lower central series terms g^(1) >= g^(2) >= ... >= g^(s).
  std::vector<int> lcs_dims() const;
  // Homogeneous dimension N = sum_d d * dim W_d.
  int homogeneous_dimension() const;

  RatVec bracket(const RatVec& u, const RatVec& v) const { return c_.bracket(u, v); }

  // Validates raw constants: exact Jacobi check, nilpotency via the lower
  // central series, then a change of basis making the constants triangular.
  // Throws JacobiViolated / NotNilpotent.
  static NilpotentAlgebra validate(const StructureConstants& raw);

  // Same as validate but also returns the change-of-basis matrix T whose rows
  // are the new basis vectors expressed in the old coordinates.
  static std::pair<NilpotentAlgebra, std::vector<RatVec>> triangularize(
      const StructureConstants& raw);

 private:
  NilpotentAlgebra() = default;
  StructureConstants c_;
  int class_ = 0;
  std::vector<int> depth_;
};

// Named algebras: "abelian(n)", "heisenberg(2m+1)", "filiform(n)",
// "unitriangular(m)". Throws ParseError for unknown names/params.
NilpotentAlgebra catalog(const std::string& name);
StructureConstants catalog_constants(const std::string& name);

// Exact Jacobi check on all basis triples; returns the first violating triple
// or nullopt-like (-1,-1,-1).
void check_jacobi(const StructureConstants& c);

}  // namespace nilfill

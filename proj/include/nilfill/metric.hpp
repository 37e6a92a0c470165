#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "nilfill/bch.hpp"
#include "nilfill/kernels.hpp"
#include "nilfill/multipoly.hpp"

namespace nilfill {

// Strictly increasing subset of {0,...,n-1}; ordered lexicographically.
using MultiIndex = std::vector<int>;

std::vector<MultiIndex> all_multiindices(int n, int d);

enum class MetricKind { euclidean, pulled_back };

struct QuadratureSpec {
  int order = 1;            // first refinement level used for comparison
  int max_subdivision = 8;  // refinement cap (clamped per dimension internally)
  double tolerance = 1e-6;  // relative Richardson error target
  double abs_floor = 1e-12; // absolute acceptance floor (near-degenerate simplices
                            // have masses below what doubles can resolve)
};

struct SimilarityBound {
  int d = 0;
  UniMajorant R;  // nondecreasing on [0, oo)
};

// Matrix of d x d minors: entry (I, J) = det M[I|J], indices in lex order.
// For a unipotent upper-triangular M the result is again unipotent
// upper-triangular.
std::vector<std::vector<MultiPoly>> lambda_matrix(const std::vector<std::vector<MultiPoly>>& M,
                                                  int d);

MultiPoly poly_det(const std::vector<std::vector<MultiPoly>>& M);

// Gram determinant of the columns of E (an n x d edge matrix), double path.
double gram_det(const std::vector<std::vector<double>>& cols);

// Bundles an algebra with its compiled frame and cached similarity bounds;
// immutable after construction and safe to share across threads.
class MetricContext {
 public:
  explicit MetricContext(NilpotentAlgebra a);

  const NilpotentAlgebra& algebra() const { return alg_; }
  const PolyFrame& poly_frame() const { return frame_; }

  // Norm of the simple d-vector spanned by edge columns (each length n) at x.
  double dvector_norm(const std::vector<double>& x,
                      const std::vector<std::vector<double>>& edges, MetricKind kind) const;

  // Batched pulled-back norms: points in SoA layout (x_soa[v*npts + i]).
  // When hadamard_sum is given it accumulates sum_p prod_c ||(Ainv^T E)_c||,
  // the pointwise Hadamard upper bound of the norm, which calibrates the
  // double-precision noise floor of the Gram determinants.
  void pulled_norms(const double* x_soa, std::size_t npts,
                    const std::vector<std::vector<double>>& edges, double* out,
                    double* hadamard_sum = nullptr) const;

  // R_d with both directions of the similarity sandwich, built from the
  // minor matrices of A and Ainv via the entrywise majorant rule.
  const SimilarityBound& similarity_bound(int d) const;

  // Mass of an affine simplex given by its vertices: closed form for the
  // euclidean metric, midpoint-rule quadrature with dyadic refinement and
  // Richardson extrapolation for the pulled-back one.
  // Returns (value, error_estimate). Throws NonConvergent at the cap.
  std::pair<double, double> simplex_mass(const std::vector<std::vector<double>>& verts,
                                         MetricKind kind, const QuadratureSpec& quad) const;

 private:
  struct AinvEntry {
    int i, j;  // strictly upper: i < j
    kernels::CompiledPoly poly;
  };

  NilpotentAlgebra alg_;
  PolyFrame frame_;
  std::vector<AinvEntry> ainv_entries_;
  mutable std::mutex mutex_;
  mutable std::map<int, SimilarityBound> bounds_;
};

}  // namespace nilfill

#pragma once

#include <vector>

#include "nilfill/rational.hpp"

namespace nilfill {

// One child of the 2-fold edgewise (Freudenthal) subdivision of the standard
// k-simplex. Row r of `bary` gives the barycentric weights of child vertex r
// over the parent vertices; entries lie in {0, 1/2, 1}. All 2^k children have
// equal volume; `sign` is the child's orientation relative to the parent.
struct RefChild {
  std::vector<RatVec> bary;  // (k+1) rows of length (k+1)
  int sign;
};

// The 2^k children, in a fixed deterministic order. Cached per k.
const std::vector<RefChild>& ref_children(int k);

// Barycenters of all 2^(k*level) subsimplices at the given refinement level,
// as a flat row-major table of barycentric weights (nsub rows, k+1 columns).
// Level 0 is the single barycenter of the whole simplex. Cached per (k, level).
const std::vector<double>& barycenter_table(int k, int level);

}  // namespace nilfill

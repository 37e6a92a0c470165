#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nilfill/chains.hpp"

namespace nilfill {

struct GridSpec {
  Rational eps{1};
  int k_max = 2;
};

// Axis-aligned cubical cell: integer anchor (in eps units) plus a sorted set
// of extent axes; dim = axes.size().
struct GridCell {
  std::vector<std::int64_t> anchor;
  std::vector<int> axes;

  bool operator<(const GridCell& o) const {
    if (anchor != o.anchor) return anchor < o.anchor;
    return axes < o.axes;
  }
  bool operator==(const GridCell& o) const { return anchor == o.anchor && axes == o.axes; }
};

// Integer-coefficient cubical chain on the eps-grid.
class GridChain {
 public:
  GridChain() = default;
  GridChain(int dim, int ambient, Rational eps)
      : dim_(dim), ambient_(ambient), eps_(std::move(eps)) {}

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_; }
  const Rational& eps() const { return eps_; }
  bool empty() const { return cells_.empty(); }
  const std::map<GridCell, std::int64_t>& cells() const { return cells_; }

  void add(GridCell cell, std::int64_t coeff);

  GridChain boundary() const;
  std::size_t cell_count() const { return cells_.size(); }
  std::int64_t coefficient_l1() const;
  double euclidean_mass() const;  // eps^dim * coefficient_l1

  // Simplicial realization; an exact chain map
  // (to_pl(boundary()) == boundary(to_pl())). Supports dim <= 2.
  PLChain to_pl() const;

 private:
  int dim_ = 0;
  int ambient_ = 0;
  Rational eps_{1};
  std::map<GridCell, std::int64_t> cells_;
};

// Axis homotopy toward base coordinate: dT + Td = pi - id, where pi projects
// anchor[axis] to base (killing cells extending along the axis). Exposed for
// the exhaustive identity tests.
GridChain axis_homotopy(const GridChain& c, int axis, std::int64_t base);
GridChain axis_projection(const GridChain& c, int axis, std::int64_t base);

// Fills a cubical 1-cycle: returns G with G.boundary() == z (sweep toward the
// bounding-box corner of z, so the filling stays local to the cycle).
GridChain fill_grid_cycle(const GridChain& z);

struct GridDeformation {
  GridChain P;            // the deformed chain on the grid
  PLChain P_pl;           // its simplicial realization
  PLChain R;              // (k+1)-chain with P_pl == c + boundary(R), exactly
  std::size_t cells_met;  // eps-cubes met by the (refined) support of c
  double mass_input;      // euclidean mass of c
  double mass_deformed;   // euclidean mass of P
};

// Federer-Fleming style deformation onto the eps-grid for k <= 2: snap the
// (refined) vertices to the lattice, replace segments by monotone staircase
// paths and triangles by locally-filled cubical patches; all homotopies are
// exact integer/rational chain algebra, so P_pl == c + boundary(R) holds
// exactly after canonicalization.
// Pre: if boundary(c) is nonempty it must already be a grid chain.
GridDeformation grid_deform(const PLChain& c, const GridSpec& grid);

}  // namespace nilfill

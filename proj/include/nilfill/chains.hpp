#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nilfill/bch.hpp"
#include "nilfill/metric.hpp"
#include "nilfill/rational.hpp"

namespace nilfill {

using Point = RatVec;

// An affine k-simplex as an ordered vertex tuple with exact coordinates.
// Canonical form sorts the vertices lexicographically, pushing the
// permutation sign into the coefficient; tuples with repeated vertices are
// identified with zero (they carry no mass and the quotient map is a chain
// map, so all boundary identities survive).
struct AffineSimplex {
  std::vector<Point> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  int ambient_dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  bool operator<(const AffineSimplex& o) const { return vertices < o.vertices; }
  bool operator==(const AffineSimplex& o) const { return vertices == o.vertices; }

  // Returns (sorted simplex, sign), or sign 0 for a repeated vertex.
  static std::pair<AffineSimplex, int> canonical(std::vector<Point> verts);

  // Gram determinant of the edge vectors (exact); zero iff geometrically
  // degenerate. Euclidean mass = sqrt(gram)/k!.
  Rational edge_gram_det() const;
  double euclidean_mass() const;
  std::vector<std::vector<double>> vertices_d() const;
};

// Integer-coefficient formal sum of canonical affine simplices.
class PLChain {
 public:
  PLChain() = default;
  PLChain(int dim, int ambient) : dim_(dim), ambient_(ambient) {}

  int dim() const { return dim_; }
  int ambient_dim() const { return ambient_; }
  bool empty() const { return terms_.empty(); }
  std::size_t simplex_count() const { return terms_.size(); }
  const std::map<AffineSimplex, std::int64_t>& terms() const { return terms_; }

  void add(std::vector<Point> verts, std::int64_t coeff);
  void add_canonical(const AffineSimplex& s, std::int64_t coeff);
  void add_chain(const PLChain& o, std::int64_t scale = 1);

  bool operator==(const PLChain& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  PLChain scaled(std::int64_t m) const;

  std::vector<Point> support_vertices() const;  // deduplicated, sorted

 private:
  int dim_ = 0;
  int ambient_ = 0;
  std::map<AffineSimplex, std::int64_t> terms_;
};

// Alternating-sign face sum; satisfies boundary(boundary(c)).empty().
PLChain boundary(const PLChain& c);

// l^1 mass: sum |a_i| * mass(sigma_i). The euclidean branch uses the exact
// closed form per simplex (returned as double); the pulled-back branch
// integrates with the context's quadrature.
double mass(const MetricContext& ctx, const PLChain& c, MetricKind kind,
            const QuadratureSpec& quad);

double euclidean_mass(const PLChain& c);

struct SupportGeometry {
  double diameter = 0;
  Rational diameter_sq = 0;
  bool contains_origin = false;          // a vertex at the origin
  std::vector<std::vector<int>> components;  // partition of simplex indices
  std::vector<PLChain> component_chains;
};

// Diameter (max pairwise vertex distance), origin membership and connected
// components under shared-vertex adjacency. Vertices are compared exactly;
// pass tol > 0 to additionally merge vertices within euclidean distance tol.
SupportGeometry support_geometry(const PLChain& c, double tol = 0.0);

// Affine cone apex * z over every simplex of z. For a cycle z of dim >= 1,
// boundary(affine_cone(apex, z)) == z.
PLChain affine_cone(const Point& apex, const PLChain& z);

Point simplex_barycenter(const AffineSimplex& s);

// Uniform 2-fold edgewise refinement; an exact chain map
// (boundary(subdivide(c)) == subdivide(boundary(c))).
PLChain subdivide(const PLChain& c);

// Chain homotopy from a chain to its subdivision: for a cycle c,
// subdivide(c) - c == boundary(subdivision_homotopy(c)).
PLChain subdivision_homotopy(const PLChain& c);

// Prism homotopy for a vertex map f: for a cycle c with image f(c),
// f(c) - c == boundary(vertex_map_homotopy(c, f)) when f fixes nothing else.
// General identity: dP(c) + P(dc) = f(c) - c.
template <typename F>
PLChain vertex_map_apply(const PLChain& c, F&& f);
template <typename F>
PLChain vertex_map_homotopy(const PLChain& c, F&& f);

// Uniform refinement of c such that the vertexwise image under x -> bch(g, x)
// has mass Cauchy within tol (relative) on every simplex. For nilpotency
// class <= 2 the map is affine and the chain is returned unrefined.
// Throws NonConvergent at the level cap.
PLChain mass_cauchy_refine(const MetricContext& ctx, const GroupPoint& g, const PLChain& c,
                           double tol, const QuadratureSpec& quad, int max_levels = 6);

// Applies x -> bch(g, x) to the chain, refining first via mass_cauchy_refine.
PLChain group_translate(const MetricContext& ctx, const GroupPoint& g, const PLChain& c,
                        double tol, const QuadratureSpec& quad, int max_levels = 6);

// Vertexwise translation with no refinement: exact chain map, coarser image.
PLChain translate_vertexwise(const NilpotentAlgebra& a, const GroupPoint& g, const PLChain& c);

// ---- template definitions ----

template <typename F>
PLChain vertex_map_apply(const PLChain& c, F&& f) {
  PLChain out(c.dim(), c.ambient_dim());
  for (const auto& [s, a] : c.terms()) {
    std::vector<Point> img;
    img.reserve(s.vertices.size());
    for (const auto& v : s.vertices) img.push_back(f(v));
    out.add(std::move(img), a);
  }
  return out;
}

template <typename F>
PLChain vertex_map_homotopy(const PLChain& c, F&& f) {
  PLChain out(c.dim() + 1, c.ambient_dim());
  for (const auto& [s, a] : c.terms()) {
    const auto& v = s.vertices;
    const std::size_t m = v.size();
    std::vector<Point> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = f(v[i]);
    // P(sigma) = sum_j (-1)^j (v_0,...,v_j, f(v_j),...,f(v_k))
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Point> prism;
      prism.reserve(m + 1);
      for (std::size_t t = 0; t <= j; ++t) prism.push_back(v[t]);
      for (std::size_t t = j; t < m; ++t) prism.push_back(img[t]);
      out.add(std::move(prism), (j % 2 == 0) ? a : -a);
    }
  }
  return out;
}

}  // namespace nilfill

#include "nilfill/chains.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nilfill/simplex_ref.hpp"

namespace nilfill {

std::pair<AffineSimplex, int> AffineSimplex::canonical(std::vector<Point> verts) {
  // Insertion sort tracking the permutation parity; equal vertices kill the
  // simplex in the oriented complex.
  int sign = 1;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    for (std::size_t j = i; j > 0 && verts[j] < verts[j - 1]; --j) {
      std::swap(verts[j], verts[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < verts.size(); ++i)
    if (verts[i] == verts[i - 1]) return {AffineSimplex{std::move(verts)}, 0};
  return {AffineSimplex{std::move(verts)}, sign};
}

Rational AffineSimplex::edge_gram_det() const {
  const std::size_t k = vertices.size() - 1;
  if (k == 0) return 1;
  std::vector<RatVec> e(k);
  for (std::size_t c = 0; c < k; ++c) e[c] = vertices[c + 1] - vertices[0];
  return rational_gram_det(e);
}

double AffineSimplex::euclidean_mass() const {
  const int k = dim();
  if (k == 0) return 1.0;
  double g = to_double(edge_gram_det());
  if (g <= 0) return 0.0;
  double kfact = 1.0;
  for (int t = 2; t <= k; ++t) kfact *= t;
  return std::sqrt(g) / kfact;
}

std::vector<std::vector<double>> AffineSimplex::vertices_d() const {
  std::vector<std::vector<double>> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(to_double(v));
  return out;
}

void PLChain::add(std::vector<Point> verts, std::int64_t coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(verts.size()) != dim_ + 1)
    throw DimensionMismatch("simplex dimension does not match chain");
  for (const auto& v : verts)
    if (static_cast<int>(v.size()) != ambient_)
      throw DimensionMismatch("vertex has wrong ambient dimension");
  auto [s, sign] = AffineSimplex::canonical(std::move(verts));
  if (sign == 0) return;
  add_canonical(s, sign > 0 ? coeff : -coeff);
}

void PLChain::add_canonical(const AffineSimplex& s, std::int64_t coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(s, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void PLChain::add_chain(const PLChain& o, std::int64_t scale) {
  if (o.empty() || scale == 0) return;
  if (dim_ != o.dim_ || ambient_ != o.ambient_)
    throw DimensionMismatch("chain addition with mismatched dimensions");
  for (const auto& [s, a] : o.terms_) add_canonical(s, a * scale);
}

PLChain PLChain::scaled(std::int64_t m) const {
  PLChain out(dim_, ambient_);
  if (m != 0)
    for (const auto& [s, a] : terms_) out.terms_.emplace(s, a * m);
  return out;
}

std::vector<Point> PLChain::support_vertices() const {
  std::vector<Point> out;
  for (const auto& [s, a] : terms_)
    for (const auto& v : s.vertices) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PLChain boundary(const PLChain& c) {
  if (c.dim() < 1) return PLChain(0, c.ambient_dim());
  PLChain out(c.dim() - 1, c.ambient_dim());
  for (const auto& [s, a] : c.terms()) {
    for (std::size_t j = 0; j < s.vertices.size(); ++j) {
      std::vector<Point> face;
      face.reserve(s.vertices.size() - 1);
      for (std::size_t t = 0; t < s.vertices.size(); ++t)
        if (t != j) face.push_back(s.vertices[t]);
      out.add(std::move(face), (j % 2 == 0) ? a : -a);
    }
  }
  return out;
}

double euclidean_mass(const PLChain& c) {
  double m = 0;
  for (const auto& [s, a] : c.terms()) m += std::abs(static_cast<double>(a)) * s.euclidean_mass();
  return m;
}

double mass(const MetricContext& ctx, const PLChain& c, MetricKind kind,
            const QuadratureSpec& quad) {
  if (kind == MetricKind::euclidean) return euclidean_mass(c);
  double m = 0;
  for (const auto& [s, a] : c.terms()) {
    auto [value, err] = ctx.simplex_mass(s.vertices_d(), kind, quad);
    m += std::abs(static_cast<double>(a)) * value;
  }
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

SupportGeometry support_geometry(const PLChain& c, double tol) {
  SupportGeometry out;
  std::vector<const AffineSimplex*> simplices;
  for (const auto& [s, a] : c.terms()) simplices.push_back(&s);

  auto verts = c.support_vertices();
  Point origin(static_cast<std::size_t>(c.ambient_dim()), Rational(0));
  for (const auto& v : verts)
    if (v == origin) out.contains_origin = true;

  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      Rational d2 = norm_sq(verts[i] - verts[j]);
      if (d2 > out.diameter_sq) out.diameter_sq = d2;
    }
  out.diameter = std::sqrt(to_double(out.diameter_sq));

  // Components: simplices sharing a vertex (exact match; optional tol merge).
  UnionFind uf(simplices.size());
  std::map<Point, int> owner;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    for (const auto& v : simplices[i]->vertices) {
      auto [it, inserted] = owner.emplace(v, static_cast<int>(i));
      if (!inserted) uf.unite(static_cast<int>(i), it->second);
    }
  }
  if (tol > 0) {
    std::vector<std::pair<Point, int>> items(owner.begin(), owner.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      auto vi = to_double(items[i].first);
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        auto vj = to_double(items[j].first);
        double d2 = 0;
        for (std::size_t t = 0; t < vi.size(); ++t) d2 += (vi[t] - vj[t]) * (vi[t] - vj[t]);
        if (d2 <= tol * tol) uf.unite(items[i].second, items[j].second);
      }
    }
  }
  std::map<int, int> root_to_comp;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    int r = uf.find(static_cast<int>(i));
    auto [it, inserted] = root_to_comp.emplace(r, static_cast<int>(out.components.size()));
    if (inserted) out.components.emplace_back();
    out.components[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
  }
  for (const auto& comp : out.components) {
    PLChain part(c.dim(), c.ambient_dim());
    for (int idx : comp) {
      const AffineSimplex& s = *simplices[static_cast<std::size_t>(idx)];
      part.add_canonical(s, c.terms().at(s));
    }
    out.component_chains.push_back(std::move(part));
  }
  return out;
}

PLChain subdivide(const PLChain& c) {
  PLChain out(c.dim(), c.ambient_dim());
  const auto& children = ref_children(c.dim());
  for (const auto& [s, a] : c.terms()) {
    for (const auto& child : children) {
      std::vector<Point> verts;
      verts.reserve(child.bary.size());
      for (const auto& row : child.bary) {
        Point p(static_cast<std::size_t>(c.ambient_dim()), Rational(0));
        for (std::size_t t = 0; t < row.size(); ++t) {
          if (row[t] == 0) continue;
          for (std::size_t q = 0; q < p.size(); ++q) p[q] += row[t] * s.vertices[t][q];
        }
        verts.push_back(std::move(p));
      }
      out.add(std::move(verts), child.sign > 0 ? a : -a);
    }
  }
  return out;
}

Point simplex_barycenter(const AffineSimplex& s) {
  Point b(s.vertices[0].size(), Rational(0));
  for (const auto& v : s.vertices) b = b + v;
  Rational inv(1, static_cast<long>(s.vertices.size()));
  return inv * b;
}

PLChain affine_cone(const Point& apex, const PLChain& z) {
  PLChain out(z.dim() + 1, z.ambient_dim());
  for (const auto& [s, a] : z.terms()) {
    std::vector<Point> verts;
    verts.reserve(s.vertices.size() + 1);
    verts.push_back(apex);
    for (const auto& v : s.vertices) verts.push_back(v);
    out.add(std::move(verts), a);
  }
  return out;
}

namespace {

// Q(sigma) = b_sigma * (Sd(sigma) - sigma - Q(boundary sigma)), Q(vertex) = 0;
// satisfies dQ + Qd = Sd - id. Memoized on canonical simplices.
class SubdivisionHomotopy {
 public:
  PLChain run(const PLChain& c) {
    PLChain out(c.dim() + 1, c.ambient_dim());
    for (const auto& [s, a] : c.terms()) out.add_chain(q(s), a);
    return out;
  }

 private:
  std::map<AffineSimplex, PLChain> memo_;

  const PLChain& q(const AffineSimplex& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    const int k = s.dim();
    const int amb = s.ambient_dim();
    PLChain result(k + 1, amb);
    if (k >= 1) {
      PLChain single(k, amb);
      single.add_canonical(s, 1);
      PLChain inner = subdivide(single);
      inner.add_chain(single, -1);
      inner.add_chain(run(boundary(single)), -1);
      result = affine_cone(simplex_barycenter(s), inner);
    }
    return memo_.emplace(s, std::move(result)).first->second;
  }
};

}  // namespace

PLChain subdivision_homotopy(const PLChain& c) {
  SubdivisionHomotopy h;
  return h.run(c);
}

PLChain translate_vertexwise(const NilpotentAlgebra& a, const GroupPoint& g, const PLChain& c) {
  return vertex_map_apply(c, [&](const Point& v) { return bch(a, g, v); });
}

PLChain mass_cauchy_refine(const MetricContext& ctx, const GroupPoint& g, const PLChain& c,
                           double tol, const QuadratureSpec& quad, int max_levels) {
  const NilpotentAlgebra& alg = ctx.algebra();
  if (alg.nilpotency_class() <= 2 || c.dim() == 0 || c.empty())
    return c;  // the map is affine for class <= 2

  auto mapped_mass = [&](const PLChain& part) {
    PLChain img = translate_vertexwise(alg, g, part);
    return mass(ctx, img, MetricKind::pulled_back, quad);
  };

  // Per-simplex refinement level by the mass-Cauchy rule, then one uniform
  // level so that shared faces refine consistently and cycles stay cycles.
  int level = 0;
  for (const auto& [s, a] : c.terms()) {
    PLChain single(c.dim(), c.ambient_dim());
    single.add_canonical(s, 1);
    double prev = mapped_mass(single);
    bool settled = false;
    for (int l = 1; l <= max_levels; ++l) {
      single = subdivide(single);
      double cur = mapped_mass(single);
      if (std::abs(cur - prev) <= tol * (std::max(cur, prev) + 1e-30)) {
        level = std::max(level, l);
        settled = true;
        break;
      }
      prev = cur;
    }
    if (!settled) throw NonConvergent("group_translate subdivision", prev, prev);
  }

  PLChain refined = c;
  for (int l = 0; l < level; ++l) refined = subdivide(refined);
  return refined;
}

PLChain group_translate(const MetricContext& ctx, const GroupPoint& g, const PLChain& c,
                        double tol, const QuadratureSpec& quad, int max_levels) {
  PLChain refined = mass_cauchy_refine(ctx, g, c, tol, quad, max_levels);
  return translate_vertexwise(ctx.algebra(), g, refined);
}

}  // namespace nilfill

#include "nilfill/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nilfill {

void GridChain::add(GridCell cell, std::int64_t coeff) {
  if (coeff == 0) return;
  if (static_cast<int>(cell.axes.size()) != dim_ ||
      static_cast<int>(cell.anchor.size()) != ambient_)
    throw DimensionMismatch("grid cell does not match chain");
  auto it = cells_.find(cell);
  if (it == cells_.end()) {
    cells_.emplace(std::move(cell), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) cells_.erase(it);
  }
}

GridChain GridChain::boundary() const {
  GridChain out(dim_ - 1, ambient_, eps_);
  if (dim_ < 1) return GridChain(0, ambient_, eps_);
  for (const auto& [cell, a] : cells_) {
    for (std::size_t j = 0; j < cell.axes.size(); ++j) {
      std::int64_t sign = (j % 2 == 0) ? 1 : -1;
      GridCell face;
      face.anchor = cell.anchor;
      for (std::size_t t = 0; t < cell.axes.size(); ++t)
        if (t != j) face.axes.push_back(cell.axes[t]);
      GridCell top = face;
      top.anchor[static_cast<std::size_t>(cell.axes[j])] += 1;
      out.add(std::move(top), sign * a);
      out.add(std::move(face), -sign * a);
    }
  }
  return out;
}

std::int64_t GridChain::coefficient_l1() const {
  std::int64_t s = 0;
  for (const auto& [cell, a] : cells_) s += std::abs(a);
  return s;
}

double GridChain::euclidean_mass() const {
  return std::pow(to_double(eps_), dim_) * static_cast<double>(coefficient_l1());
}

namespace {

Point cell_point(const GridCell& cell, const Rational& eps) {
  Point p(cell.anchor.size());
  for (std::size_t i = 0; i < cell.anchor.size(); ++i) p[i] = eps * Rational(cell.anchor[i]);
  return p;
}

}  // namespace

PLChain GridChain::to_pl() const {
  if (dim_ > 2) throw DimensionUnsupported("grid chains realize simplicially only up to dim 2");
  PLChain out(dim_, ambient_);
  for (const auto& [cell, a] : cells_) {
    Point p = cell_point(cell, eps_);
    if (dim_ == 0) {
      out.add({p}, a);
    } else if (dim_ == 1) {
      Point q = p;
      q[static_cast<std::size_t>(cell.axes[0])] += eps_;
      out.add({p, q}, a);
    } else {
      Point pu = p, puv = p, pv = p;
      pu[static_cast<std::size_t>(cell.axes[0])] += eps_;
      puv[static_cast<std::size_t>(cell.axes[0])] += eps_;
      puv[static_cast<std::size_t>(cell.axes[1])] += eps_;
      pv[static_cast<std::size_t>(cell.axes[1])] += eps_;
      out.add({p, pu, puv}, a);
      out.add({p, puv, pv}, a);
    }
  }
  return out;
}

GridChain axis_projection(const GridChain& c, int axis, std::int64_t base) {
  GridChain out(c.dim(), c.ambient_dim(), c.eps());
  for (const auto& [cell, a] : c.cells()) {
    if (std::find(cell.axes.begin(), cell.axes.end(), axis) != cell.axes.end()) continue;
    GridCell moved = cell;
    moved.anchor[static_cast<std::size_t>(axis)] = base;
    out.add(std::move(moved), a);
  }
  return out;
}

GridChain axis_homotopy(const GridChain& c, int axis, std::int64_t base) {
  GridChain out(c.dim() + 1, c.ambient_dim(), c.eps());
  for (const auto& [cell, a] : c.cells()) {
    if (std::find(cell.axes.begin(), cell.axes.end(), axis) != cell.axes.end()) continue;
    std::int64_t at = cell.anchor[static_cast<std::size_t>(axis)];
    if (at == base) continue;
    // Insertion parity of `axis` into the sorted extent set.
    int pos = 0;
    while (pos < static_cast<int>(cell.axes.size()) && cell.axes[static_cast<std::size_t>(pos)] < axis) ++pos;
    std::int64_t sign = (pos % 2 == 0) ? 1 : -1;
    std::int64_t dir = at > base ? -1 : 1;
    std::int64_t lo = std::min(at, base), hi = std::max(at, base);
    GridCell swept = cell;
    swept.axes.insert(swept.axes.begin() + pos, axis);
    for (std::int64_t i = lo; i < hi; ++i) {
      swept.anchor[static_cast<std::size_t>(axis)] = i;
      out.add(swept, sign * dir * a);
    }
  }
  return out;
}

GridChain fill_grid_cycle(const GridChain& z) {
  const int n = z.ambient_dim();
  GridChain G(z.dim() + 1, n, z.eps());
  if (z.empty()) return G;
  std::vector<std::int64_t> base = z.cells().begin()->first.anchor;
  for (const auto& [cell, a] : z.cells())
    for (int t = 0; t < n; ++t)
      base[static_cast<std::size_t>(t)] =
          std::min(base[static_cast<std::size_t>(t)], cell.anchor[static_cast<std::size_t>(t)]);

  GridChain cur = z;
  for (int t = 0; t < n; ++t) {
    GridChain h = axis_homotopy(cur, t, base[static_cast<std::size_t>(t)]);
    for (const auto& [cell, a] : h.cells()) G.add(cell, -a);
    cur = axis_projection(cur, t, base[static_cast<std::size_t>(t)]);
  }
  if (!cur.empty()) throw Error("internal: grid cycle did not project away");
  return G;
}

namespace {

struct LatticeCtx {
  Rational eps;
  int n;

  bool on_lattice(const Point& v) const {
    for (const auto& x : v)
      if (denominator(Rational(x / eps)) != 1) return false;
    return true;
  }

  std::vector<std::int64_t> to_anchor(const Point& v) const {
    std::vector<std::int64_t> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      a[i] = numerator(Rational(v[i] / eps)).convert_to<std::int64_t>();
    return a;
  }

  Point snap(const Point& v) const {
    Point out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      out[i] = eps * Rational(rat_round_half_up(v[i] / eps));
    return out;
  }

  // Monotone staircase path between lattice points: axis 0 first, then 1, ...
  // Returns the grid chain and its simplicial version (both oriented a -> b).
  std::pair<GridChain, PLChain> staircase(const Point& a, const Point& b) const {
    GridChain gc(1, n, eps);
    PLChain pl(1, n);
    std::vector<std::int64_t> cur = to_anchor(a), target = to_anchor(b);
    Point cur_pt = a;
    for (int t = 0; t < n; ++t) {
      while (cur[static_cast<std::size_t>(t)] != target[static_cast<std::size_t>(t)]) {
        std::int64_t step = cur[static_cast<std::size_t>(t)] < target[static_cast<std::size_t>(t)] ? 1 : -1;
        Point next_pt = cur_pt;
        next_pt[static_cast<std::size_t>(t)] += eps * Rational(step);
        GridCell edge;
        edge.anchor = cur;
        if (step < 0) edge.anchor[static_cast<std::size_t>(t)] -= 1;
        edge.axes = {t};
        gc.add(std::move(edge), step);
        pl.add({cur_pt, next_pt}, 1);
        cur[static_cast<std::size_t>(t)] += step;
        cur_pt = next_pt;
      }
    }
    return {std::move(gc), std::move(pl)};
  }

  // 2-chain D with boundary(D) = staircase_pl(a,b) - segment(a,b).
  PLChain staircase_homotopy(const Point& a, const Point& b, const PLChain& stair_pl) const {
    PLChain z = stair_pl;
    z.add({a, b}, -1);
    if (z.empty()) return PLChain(2, n);
    return affine_cone(a, z);
  }
};

}  // namespace

GridDeformation grid_deform(const PLChain& c, const GridSpec& grid) {
  const int k = c.dim();
  const int n = c.ambient_dim();
  if (k > grid.k_max || k > 2)
    throw DimensionUnsupported("grid_deform supports chains of dimension <= " +
                               std::to_string(std::min(grid.k_max, 2)));
  if (grid.eps <= 0) throw Error("grid eps must be positive");
  LatticeCtx L{grid.eps, n};

  GridDeformation out;
  out.P = GridChain(k, n, grid.eps);
  out.P_pl = PLChain(k, n);
  out.R = PLChain(k + 1, n);
  out.mass_input = euclidean_mass(c);
  if (c.empty()) {
    out.mass_deformed = 0;
    out.cells_met = 0;
    return out;
  }

  PLChain bd = boundary(c);
  const bool is_cycle = bd.empty();
  if (!is_cycle) {
    for (const auto& [s, a] : bd.terms()) {
      if (k == 1) {
        if (!L.on_lattice(s.vertices[0]))
          throw BoundaryNotOnGrid("boundary vertex off the lattice");
      } else {
        // boundary edges must be unit grid edges
        if (!L.on_lattice(s.vertices[0]) || !L.on_lattice(s.vertices[1]))
          throw BoundaryNotOnGrid("boundary edge vertex off the lattice");
        auto d = s.vertices[1] - s.vertices[0];
        int moved = 0;
        for (const auto& x : d) {
          if (x == 0) continue;
          ++moved;
          if (rat_abs(x) != grid.eps) throw BoundaryNotOnGrid("boundary edge is not eps-long");
        }
        if (moved != 1) throw BoundaryNotOnGrid("boundary edge is not axis-aligned");
      }
    }
  }

  // Refine cycles until every simplex fits in a cell-sized ball; chains with
  // (grid) boundary are left unrefined so the boundary stays on the grid.
  PLChain c_sub = c;
  PLChain q_tot(k + 1, n);
  if (is_cycle && k >= 1) {
    const Rational eps_sq = grid.eps * grid.eps;
    for (int rounds = 0; rounds < 48; ++rounds) {
      Rational max_d2 = 0;
      for (const auto& [s, a] : c_sub.terms())
        for (std::size_t i = 0; i < s.vertices.size(); ++i)
          for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
            max_d2 = std::max(max_d2, norm_sq(s.vertices[i] - s.vertices[j]));
      if (max_d2 <= eps_sq) break;
      q_tot.add_chain(subdivision_homotopy(c_sub));
      c_sub = subdivide(c_sub);
    }
  }

  // Snap to the lattice with the prism homotopy.
  auto snap = [&](const Point& v) { return L.snap(v); };
  PLChain c_snapped = vertex_map_apply(c_sub, snap);
  PLChain r_snap = vertex_map_homotopy(c_sub, snap);

  PLChain r_stair(k + 1, n);
  if (k == 0) {
    for (const auto& [s, a] : c_snapped.terms()) {
      GridCell cell;
      cell.anchor = L.to_anchor(s.vertices[0]);
      out.P.add(std::move(cell), a);
    }
    out.P_pl = c_snapped;
  } else if (k == 1) {
    for (const auto& [s, a] : c_snapped.terms()) {
      auto [gc, pl] = L.staircase(s.vertices[0], s.vertices[1]);
      PLChain d = L.staircase_homotopy(s.vertices[0], s.vertices[1], pl);
      for (const auto& [cell, w] : gc.cells()) out.P.add(cell, w * a);
      out.P_pl.add_chain(pl, a);
      r_stair.add_chain(d, a);
    }
  } else {  // k == 2
    for (const auto& [s, a] : c_snapped.terms()) {
      const Point &va = s.vertices[0], &vb = s.vertices[1], &vc = s.vertices[2];
      auto [g_bc, pl_bc] = L.staircase(vb, vc);
      auto [g_ac, pl_ac] = L.staircase(va, vc);
      auto [g_ab, pl_ab] = L.staircase(va, vb);

      GridChain z(1, n, grid.eps);
      for (const auto& [cell, w] : g_bc.cells()) z.add(cell, w);
      for (const auto& [cell, w] : g_ac.cells()) z.add(cell, -w);
      for (const auto& [cell, w] : g_ab.cells()) z.add(cell, w);
      GridChain G = fill_grid_cycle(z);
      PLChain G_pl = G.to_pl();

      PLChain y = G_pl;
      {
        PLChain tri(2, n);
        tri.add_canonical(s, 1);
        y.add_chain(tri, -1);
      }
      y.add_chain(L.staircase_homotopy(vb, vc, pl_bc), -1);
      y.add_chain(L.staircase_homotopy(va, vc, pl_ac), 1);
      y.add_chain(L.staircase_homotopy(va, vb, pl_ab), -1);
      PLChain w_fill = affine_cone(va, y);

      for (const auto& [cell, w] : G.cells()) out.P.add(cell, w * a);
      out.P_pl.add_chain(G_pl, a);
      r_stair.add_chain(w_fill, a);
    }
  }

  out.R.add_chain(q_tot);
  out.R.add_chain(r_snap);
  out.R.add_chain(r_stair);

  std::set<std::vector<std::int64_t>> cubes;
  for (const auto& v : c_sub.support_vertices()) {
    std::vector<std::int64_t> cube(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      cube[i] = rat_floor(v[i] / grid.eps).convert_to<std::int64_t>();
    cubes.insert(std::move(cube));
  }
  out.cells_met = cubes.size();
  out.mass_deformed = out.P.euclidean_mass();
  return out;
}

}  // namespace nilfill

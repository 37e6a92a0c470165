#include "nilfill/filling.hpp"

#include <algorithm>
#include <cmath>

namespace nilfill {

namespace {

Point lex_min_vertex(const PLChain& c) {
  auto verts = c.support_vertices();
  if (verts.empty()) throw Error("empty chain has no support vertex");
  return verts.front();
}

double support_radius(const PLChain& c) {
  double r = 0;
  for (const auto& v : c.support_vertices()) {
    double s = 0;
    for (const auto& x : v) {
      double xd = to_double(x);
      s += xd * xd;
    }
    r = std::max(r, std::sqrt(s));
  }
  return r;
}

}  // namespace

PLChain cone(const PLChain& c) {
  const int k = c.dim();
  const int n = c.ambient_dim();
  if (k < 1) throw DimensionUnsupported("cone needs a cycle of dimension >= 1");
  if (k > n - 1) throw DimensionUnsupported("cone needs k <= n-1");
  if (!boundary(c).empty()) throw NotACycle("cone input has nonzero boundary");
  if (!c.empty()) {
    Point origin(static_cast<std::size_t>(n), Rational(0));
    bool found = false;
    for (const auto& v : c.support_vertices())
      if (v == origin) found = true;
    if (!found) throw OriginNotInSupport();
    return affine_cone(origin, c);
  }
  return PLChain(k + 1, n);
}

LoopFill fill_loop(const MetricContext& ctx, const PLChain& loop, const QuadratureSpec& quad) {
  if (loop.dim() != 1) throw DimensionUnsupported("fill_loop expects a 1-cycle");
  if (!boundary(loop).empty()) throw NotACycle("fill_loop input");
  if (loop.empty()) {
    LoopFill out;
    out.disk = PLChain(2, loop.ambient_dim());
    out.refined_cycle = loop;
    out.report.d = 1;
    out.report.components = 0;
    out.report.cauchy_schwarz_ok = true;
    out.report.certificate_ok = true;
    return out;
  }
  auto geom = support_geometry(loop);
  if (geom.components.size() != 1)
    throw NotConnected(static_cast<int>(geom.components.size()));

  const NilpotentAlgebra& alg = ctx.algebra();
  GroupPoint g = group_inverse(lex_min_vertex(loop));
  if (geom.contains_origin) g.assign(g.size(), Rational(0));

  PLChain refined = mass_cauchy_refine(ctx, g, loop, quad.tolerance, quad);
  PLChain gamma0 = translate_vertexwise(alg, g, refined);

  FillReport rep;
  rep.d = 1;
  rep.components = 1;
  rep.input_mass_pulled = mass(ctx, gamma0, MetricKind::pulled_back, quad);
  rep.input_mass_euclid = euclidean_mass(gamma0);
  rep.radius = support_radius(gamma0);
  rep.diameter = support_geometry(gamma0).diameter;

  PLChain disk0 = cone(gamma0);
  rep.fill_mass_euclid = euclidean_mass(disk0);
  rep.fill_mass_pulled = mass(ctx, disk0, MetricKind::pulled_back, quad);

  const double vhat = rep.input_mass_euclid;
  rep.cauchy_schwarz_ok =
      rep.fill_mass_euclid <= vhat * rep.radius * (1 + 1e-9) + 1e-12 &&
      rep.radius <= vhat * (0.5 + 1e-9) + 1e-12;
  rep.r2_at_vhat = ctx.similarity_bound(2).R.eval(vhat);
  rep.disk_bound = rep.r2_at_vhat * rep.fill_mass_euclid;
  rep.certificate_ok =
      rep.fill_mass_pulled <= rep.disk_bound * (1 + 4 * quad.tolerance + 1e-9) + 1e-12;

  ComponentReport comp;
  comp.lambda = 1;
  comp.input_mass_pulled = rep.input_mass_pulled;
  comp.rho = rep.radius;
  comp.cone_mass_euclid = rep.fill_mass_euclid;
  comp.cone_mass_pulled = rep.fill_mass_pulled;
  comp.r_d = ctx.similarity_bound(1).R.eval(rep.radius);
  comp.r_d1 = ctx.similarity_bound(2).R.eval(rep.radius);
  comp.certificate = comp.r_d1 * comp.r_d * comp.r_d;
  comp.k_measured = comp.certificate > 0 ? comp.cone_mass_pulled / comp.certificate : 0;
  comp.translator = g;
  rep.bound_value = comp.certificate;
  rep.k_measured = comp.k_measured;
  rep.per_component.push_back(comp);

  LoopFill out;
  GroupPoint back = group_inverse(g);
  out.disk = translate_vertexwise(alg, back, disk0);
  out.refined_cycle = translate_vertexwise(alg, back, gamma0);
  out.report = std::move(rep);
  return out;
}

CycleFill fill_cycle(const MetricContext& ctx, const PLChain& c, const CycleFillOptions& opts,
                     const QuadratureSpec& quad) {
  const int d = c.dim();
  const int n = c.ambient_dim();
  if (d < 1 || d > n - 1) throw DimensionUnsupported("fill_cycle needs 1 <= d <= n-1");
  if (!boundary(c).empty()) throw NotACycle("fill_cycle input");

  const NilpotentAlgebra& alg = ctx.algebra();
  CycleFill out;
  out.filling = PLChain(d + 1, n);
  out.refined_cycle = PLChain(d, n);
  out.report.d = d;

  if (c.empty()) {
    out.report.certificate_ok = true;
    out.report.cauchy_schwarz_ok = true;
    return out;
  }

  auto geom = support_geometry(c);
  out.report.components = static_cast<int>(geom.component_chains.size());
  out.report.diameter = geom.diameter;

  double total_in = 0;
  std::vector<double> comp_in;
  for (const auto& part : geom.component_chains) {
    double m = mass(ctx, part, MetricKind::pulled_back, quad);
    comp_in.push_back(m);
    total_in += m;
  }
  out.report.input_mass_pulled = total_in;
  out.report.input_mass_euclid = euclidean_mass(c);

  for (std::size_t j = 0; j < geom.component_chains.size(); ++j) {
    const PLChain& part = geom.component_chains[j];
    GroupPoint g = group_inverse(lex_min_vertex(part));
    PLChain refined = mass_cauchy_refine(ctx, g, part, quad.tolerance, quad);
    PLChain part0 = translate_vertexwise(alg, g, refined);
    PLChain cone0 = cone(part0);

    ComponentReport comp;
    comp.translator = g;
    comp.lambda = total_in > 0 ? comp_in[j] / total_in : 0;
    comp.input_mass_pulled = comp_in[j];
    comp.rho = support_radius(part0);
    comp.cone_mass_euclid = euclidean_mass(cone0);
    comp.cone_mass_pulled = mass(ctx, cone0, MetricKind::pulled_back, quad);
    comp.r_d = ctx.similarity_bound(d).R.eval(comp.rho);
    comp.r_d1 = ctx.similarity_bound(d + 1).R.eval(comp.rho);
    comp.certificate = comp.r_d1 * comp.r_d * comp.r_d;
    comp.k_measured = comp.certificate > 0 ? comp.cone_mass_pulled / comp.certificate : 0;

    GroupPoint back = group_inverse(g);
    out.filling.add_chain(translate_vertexwise(alg, back, cone0));
    out.refined_cycle.add_chain(translate_vertexwise(alg, back, part0));

    out.report.radius = std::max(out.report.radius, comp.rho);
    out.report.bound_value += comp.certificate;
    out.report.per_component.push_back(std::move(comp));
  }

  out.report.fill_mass_euclid = euclidean_mass(out.filling);
  out.report.fill_mass_pulled = mass(ctx, out.filling, MetricKind::pulled_back, quad);
  out.report.k_measured = out.report.bound_value > 0
                              ? out.report.fill_mass_pulled / out.report.bound_value
                              : 0;
  // The certificate row: the translated cone masses obey the sandwich bound.
  bool ok = true;
  for (const auto& comp : out.report.per_component) {
    double lhs = comp.cone_mass_pulled;
    double rhs = comp.r_d1 * comp.cone_mass_euclid * (1 + 4 * quad.tolerance + 1e-9) + 1e-12;
    if (lhs > rhs) ok = false;
  }
  out.report.certificate_ok = ok;
  out.report.cauchy_schwarz_ok = true;

  if (opts.deform) {
    if (d + 1 > opts.grid.k_max)
      throw DimensionUnsupported("grid deformation supports fillings of dimension <= " +
                                 std::to_string(opts.grid.k_max));
    out.deformed = grid_deform(out.filling, opts.grid);
  }
  return out;
}

}  // namespace nilfill

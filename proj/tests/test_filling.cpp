#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilfill/experiments.hpp"
#include "nilfill/filling.hpp"
#include "nilfill/rng.hpp"
#include "oracles.hpp"

using namespace nilfill;
using namespace nilfill::testing;

namespace {

Point pt(std::initializer_list<int> xs) {
  Point p;
  for (int x : xs) p.push_back(Rational(x));
  return p;
}

PLChain square_loop(int n, long scale = 1, Point offset = {}) {
  if (offset.empty()) offset = Point(static_cast<std::size_t>(n), Rational(0));
  auto v = [&](int a, int b) {
    Point p = offset;
    p[0] += Rational(a) * scale;
    p[1] += Rational(b) * scale;
    return p;
  };
  PLChain loop(1, n);
  loop.add({v(0, 0), v(1, 0)}, 1);
  loop.add({v(1, 0), v(1, 1)}, 1);
  loop.add({v(1, 1), v(0, 1)}, 1);
  loop.add({v(0, 1), v(0, 0)}, 1);
  return loop;
}

}  // namespace

TEST_CASE("cone of the unit square loop") {
  PLChain loop = square_loop(2);
  PLChain c = cone(loop);
  CHECK(boundary(c) == loop);
  CHECK(euclidean_mass(c) == doctest::Approx(1.0));
  // Two of the four cone triangles are degenerate tuples (apex on the loop).
  CHECK(c.simplex_count() == 2);
  auto geom = support_geometry(loop);
  CHECK(euclidean_mass(c) <= euclidean_mass(loop) * geom.diameter + 1e-12);
}

TEST_CASE("cone error paths") {
  PLChain notcycle(1, 2);
  notcycle.add({pt({0, 0}), pt({1, 0})}, 1);
  CHECK_THROWS_AS(cone(notcycle), NotACycle);

  PLChain away = square_loop(2, 1, pt({5, 5}));
  CHECK_THROWS_AS(cone(away), OriginNotInSupport);

  PLChain top(2, 2);  // 2-cycle in R^2 would need k <= n-1 = 1
  CHECK_THROWS_AS(cone(top), DimensionUnsupported);
}

TEST_CASE("cone contract on random cycles, exact per-simplex inequalities") {
  Rng rng(103);
  int tested = 0;
  for (int k : {1, 2}) {
    for (int n : {3, 4}) {
      if (k > n - 1) continue;
      for (int t = 0; t < 25; ++t) {
        PLChain c = random_cycle(rng, k, n, 3);
        if (c.empty()) continue;
        ++tested;
        PLChain C = cone(c);
        CHECK(boundary(C) == c);

        auto geom = support_geometry(c);
        const Rational diam_sq = geom.diameter_sq;
        Rational kf = 1;
        for (int i = 2; i <= k; ++i) kf *= i;
        // mass(cone sigma) <= mass(sigma) * diam, squared to stay rational:
        // gram_cone / ((k+1)!)^2 <= (gram_sigma / (k!)^2) * diam^2.
        for (const auto& [s, a] : c.terms()) {
          std::vector<Point> coned;
          coned.push_back(Point(static_cast<std::size_t>(n), Rational(0)));
          for (const auto& v : s.vertices) coned.push_back(v);
          auto [cs, sign] = AffineSimplex::canonical(coned);
          Rational g_cone = sign == 0 ? Rational(0) : cs.edge_gram_det();
          Rational lhs = g_cone;
          Rational rhs = s.edge_gram_det() * diam_sq * Rational((k + 1) * (k + 1));
          CHECK(lhs <= rhs);
        }
        // Support containment: every cone vertex lies in B(0, diam).
        for (const auto& v : C.support_vertices()) CHECK(norm_sq(v) <= diam_sq);
      }
    }
  }
  CHECK(tested > 40);
}

TEST_CASE("fill_loop on an abelian 64-gon approximates the disk") {
  MetricContext ctx(catalog("abelian(2)"));
  QuadratureSpec quad;
  const int N = 64;
  PLChain loop(1, 2);
  auto vert = [&](int i) {
    double a = 2 * M_PI * i / N;
    // rational approximation of the circle points keeps everything exact
    long sx = std::lround(std::cos(a) * 1000000), sy = std::lround(std::sin(a) * 1000000);
    return Point{Rational(sx, 1000000) + 1, Rational(sy, 1000000)};  // through the origin-ish
  };
  for (int i = 0; i < N; ++i) loop.add({vert(i), vert(i + 1)}, 1);
  REQUIRE(boundary(loop).empty());
  LoopFill f = fill_loop(ctx, loop, quad);
  double p = f.report.input_mass_euclid;
  CHECK(f.report.fill_mass_pulled == doctest::Approx(f.report.fill_mass_euclid).epsilon(1e-9));
  CHECK(f.report.fill_mass_euclid <= p * p);
  CHECK(f.report.fill_mass_euclid == doctest::Approx(M_PI).epsilon(0.05));
  CHECK(f.report.cauchy_schwarz_ok);
  CHECK(f.report.certificate_ok);
  CHECK(boundary(f.disk) == f.refined_cycle);
}

TEST_CASE("degenerate back-and-forth loop has zero cone mass") {
  MetricContext ctx(catalog("heisenberg(3)"));
  QuadratureSpec quad;
  PLChain loop(1, 3);
  loop.add({pt({0, 0, 0}), pt({1, 0, 0})}, 1);
  loop.add({pt({1, 0, 0}), pt({0, 0, 0})}, 1);
  CHECK(loop.empty());  // cancels exactly
  LoopFill f = fill_loop(ctx, loop, quad);
  CHECK(f.report.fill_mass_pulled == 0.0);
}

TEST_CASE("fill_loop requires a connected cycle") {
  MetricContext ctx(catalog("abelian(2)"));
  QuadratureSpec quad;
  PLChain two = square_loop(2);
  two.add_chain(square_loop(2, 1, pt({10, 10})));
  CHECK_THROWS_AS(fill_loop(ctx, two, quad), NotConnected);
}

TEST_CASE("fill_cycle splits disjoint components") {
  MetricContext ctx(catalog("abelian(2)"));
  QuadratureSpec quad;
  PLChain two = square_loop(2);
  two.add_chain(square_loop(2, 1, pt({10, 10})));
  CycleFill f = fill_cycle(ctx, two, {}, quad);
  CHECK(f.report.components == 2);
  REQUIRE(f.report.per_component.size() == 2);
  CHECK(f.report.per_component[0].lambda == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(f.report.per_component[1].lambda == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(boundary(f.filling) == f.refined_cycle);
  CHECK(f.refined_cycle == two);  // abelian translation is exact, no refinement
  CHECK(f.report.fill_mass_euclid == doctest::Approx(2.0));
  CHECK(f.report.certificate_ok);
}

TEST_CASE("fill_cycle on a heisenberg 2-cycle (octahedron boundary)") {
  MetricContext ctx(catalog("heisenberg(3)"));
  QuadratureSpec quad;
  Rng rng(107);
  PLChain cyc = cycle_family(ctx.algebra(), 2, 1, rng);
  REQUIRE(boundary(cyc).empty());
  CycleFill f = fill_cycle(ctx, cyc, {}, quad);
  CHECK(boundary(f.filling) == f.refined_cycle);
  CHECK(f.report.fill_mass_pulled > 0);
  CHECK(f.report.certificate_ok);
  CHECK(f.report.bound_value > 0);
}

TEST_CASE("cauchy-schwarz disk bound, exact rational route") {
  // For a connected loop through the origin: each cone triangle (0, a, b)
  // satisfies (2 area)^2 <= diam^2 |b-a|^2 exactly, and diam <= v-hat/2 via a
  // rational lower bound of the euclidean length; together these give
  // euclidean cone area <= v-hat^2 / 4.
  NilpotentAlgebra h = catalog("heisenberg(3)");
  for (long lambda : {1L, 2L, 4L}) {
    PLChain loop = dehn_loop(h, lambda);
    auto geom = support_geometry(loop);
    REQUIRE(geom.contains_origin);
    Rational vhat_lo = 0;
    for (const auto& [s, a] : loop.terms())
      vhat_lo += Rational(std::abs(a)) * rational_sqrt_lower(norm_sq(s.vertices[1] - s.vertices[0]));
    CHECK(Rational(4) * geom.diameter_sq <= vhat_lo * vhat_lo);
    PLChain disk = cone(loop);
    for (const auto& [s, a] : loop.terms()) {
      std::vector<Point> coned{Point(3, Rational(0)), s.vertices[0], s.vertices[1]};
      auto [cs, sign] = AffineSimplex::canonical(coned);
      Rational g_cone = sign == 0 ? Rational(0) : cs.edge_gram_det();
      CHECK(g_cone <= geom.diameter_sq * norm_sq(s.vertices[1] - s.vertices[0]));
    }
    double vhat = euclidean_mass(loop);
    CHECK(euclidean_mass(disk) <= vhat * vhat / 4 * (1 + 1e-12));
  }
}

TEST_CASE("sandwich transfer: chain masses obey the R_d envelope") {
  MetricContext ctx(catalog("heisenberg(3)"));
  QuadratureSpec quad;
  quad.tolerance = 1e-5;
  // 1e-6 relative on the mathematical masses plus the quadrature budget.
  const double slack = 1e-6 + 4 * quad.tolerance;
  Rng rng(211);
  for (int t = 0; t < 15; ++t) {
    PLChain c(2, 3);
    for (int s = 0; s < 3; ++s) {
      std::vector<Point> verts;
      for (int v = 0; v < 3; ++v) verts.push_back(rng.next_rational_vec(3, 4, 2));
      c.add(std::move(verts), 1);
    }
    if (c.empty()) continue;
    double r = 0;
    for (const auto& v : c.support_vertices())
      r = std::max(r, std::sqrt(to_double(norm_sq(v))));
    double R = ctx.similarity_bound(2).R.eval(r);
    double eu = euclidean_mass(c);
    double pb = mass(ctx, c, MetricKind::pulled_back, quad);
    CHECK(pb <= R * eu * (1 + slack));
    CHECK(pb >= eu / R * (1 - slack));
  }
}

TEST_CASE("fill_cycle rejects non-cycles and bad dimensions") {
  MetricContext ctx(catalog("heisenberg(3)"));
  QuadratureSpec quad;
  PLChain notcycle(1, 3);
  notcycle.add({pt({0, 0, 0}), pt({1, 0, 0})}, 1);
  CHECK_THROWS_AS(fill_cycle(ctx, notcycle, {}, quad), NotACycle);
  PLChain top(3, 3);
  CHECK_THROWS_AS(fill_cycle(ctx, top, {}, quad), DimensionUnsupported);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilfill/experiments.hpp"

using namespace nilfill;

TEST_CASE("synthetic exponent fit recovers the degree") {
  // points (1,1), (2,4), (4,16): slope 2 on a log-log scale
  std::vector<std::pair<double, double>> pts;
  for (double x : {1.0, 2.0, 4.0}) pts.emplace_back(std::log(x), std::log(x * x));
  double intercept, residual;
  int used;
  double slope = fit_slope_upper_half(pts, &intercept, &residual, &used);
  CHECK(slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(residual == doctest::Approx(0.0));
}

TEST_CASE("dehn loop closes exactly and has the expected step count") {
  NilpotentAlgebra ab = catalog("abelian(2)");
  PLChain sq = dehn_loop(ab, 1);
  CHECK(boundary(sq).empty());
  CHECK(sq.simplex_count() == 4);
  CHECK(euclidean_mass(sq) == doctest::Approx(4.0));

  NilpotentAlgebra h = catalog("heisenberg(3)");
  for (long lambda : {1L, 2L, 3L}) {
    PLChain loop = dehn_loop(h, lambda);
    CHECK(boundary(loop).empty());
    CHECK(loop.simplex_count() == static_cast<std::size_t>(8 * lambda));
  }
}

TEST_CASE("cycle family produces exact cycles") {
  Rng rng(163);
  for (const char* name : {"heisenberg(3)", "filiform(4)"}) {
    NilpotentAlgebra a = catalog(name);
    for (long lambda : {1L, 2L}) {
      PLChain c = cycle_family(a, 2, lambda, rng);
      CHECK(!c.empty());
      CHECK(boundary(c).empty());
    }
  }
}

TEST_CASE("abelian dehn experiment has slope 2") {
  ExperimentConfig cfg;
  cfg.algebra = "abelian(2)";
  cfg.family = "dehn_loops";
  cfg.scales = {1, 2, 4, 8};
  cfg.jobs = 2;
  ExperimentResult res = run_experiment(cfg);
  CHECK(res.all_certificates_ok);
  CHECK(res.fit.slope == doctest::Approx(2.0).epsilon(0.05));
  CHECK(res.fit.exponent_bound == doctest::Approx(0.0));  // s = 1 and both R_d are constants
}

TEST_CASE("experiment outputs are deterministic") {
  ExperimentConfig cfg;
  cfg.algebra = "heisenberg(3)";
  cfg.family = "cycles_d";
  cfg.d = 2;
  cfg.scales = {1, 2};
  cfg.seed = 5;
  cfg.jobs = 2;
  ExperimentResult a = run_experiment(cfg);
  ExperimentResult b = run_experiment(cfg);
  CHECK(a.csv == b.csv);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.svg == b.svg);
}

TEST_CASE("chain JSON round trip preserves canonical chains") {
  Rng rng(167);
  for (int t = 0; t < 30; ++t) {
    int k = 1 + static_cast<int>(rng.next_below(2));
    PLChain c(k, 3);
    for (int s = 0; s < 4; ++s) {
      std::vector<Point> verts;
      for (int v = 0; v <= k; ++v) verts.push_back(rng.next_rational_vec(3, 9, 7));
      c.add(std::move(verts), rng.next_int(-3, 3));
    }
    CHECK(chain_from_json(chain_to_json(c)) == c);
  }
}

TEST_CASE("algebra JSON round trip") {
  for (const char* name : {"heisenberg(5)", "filiform(4)", "unitriangular(4)"}) {
    StructureConstants c = catalog_constants(name);
    StructureConstants back = algebra_from_json(algebra_to_json(c));
    CHECK(back.n == c.n);
    CHECK(back.brackets == c.brackets);
  }
}

TEST_CASE("config json round trip") {
  ExperimentConfig cfg;
  cfg.algebra = "filiform(4)";
  cfg.family = "dehn_loops";
  cfg.scales = {1, 2, 3};
  cfg.seed = 42;
  cfg.expected_slope = {{1.5, 2.5}};
  ExperimentConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.algebra == cfg.algebra);
  CHECK(back.scales == cfg.scales);
  CHECK(back.seed == cfg.seed);
  REQUIRE(back.expected_slope.has_value());
  CHECK(back.expected_slope->first == doctest::Approx(1.5));
}

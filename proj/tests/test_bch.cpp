#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilfill/bch.hpp"
#include "nilfill/rng.hpp"
#include "oracles.hpp"

using namespace nilfill;
using namespace nilfill::testing;

TEST_CASE("heisenberg class-2 law") {
  NilpotentAlgebra a = catalog("heisenberg(3)");
  GroupPoint x{1, 0, 0}, y{0, 1, 0};
  CHECK(bch(a, x, y) == GroupPoint{1, 1, Rational(1, 2)});
  CHECK(left_translate(a, x, y) == GroupPoint{1, 1, Rational(1, 2)});
}

TEST_CASE("inverse and identity") {
  Rng rng(5);
  for (const char* name : {"heisenberg(3)", "filiform(4)", "unitriangular(4)"}) {
    NilpotentAlgebra a = catalog(name);
    GroupPoint zero(static_cast<std::size_t>(a.dim()), Rational(0));
    for (int t = 0; t < 20; ++t) {
      GroupPoint x = rng.next_rational_vec(static_cast<std::size_t>(a.dim()), 6, 3);
      CHECK(bch(a, x, group_inverse(x)) == zero);
      CHECK(bch(a, x, zero) == x);
      CHECK(bch(a, zero, x) == x);
    }
  }
}

TEST_CASE("associativity on random rational triples") {
  Rng rng(23);
  for (const char* name : {"heisenberg(3)", "filiform(4)", "filiform(5)", "unitriangular(4)"}) {
    NilpotentAlgebra a = catalog(name);
    for (int t = 0; t < 25; ++t) {
      GroupPoint x = rng.next_rational_vec(static_cast<std::size_t>(a.dim()), 4, 2);
      GroupPoint y = rng.next_rational_vec(static_cast<std::size_t>(a.dim()), 4, 2);
      GroupPoint z = rng.next_rational_vec(static_cast<std::size_t>(a.dim()), 4, 2);
      CHECK(bch(a, bch(a, x, y), z) == bch(a, x, bch(a, y, z)));
    }
  }
}

TEST_CASE("matrix-group oracle agreement for unitriangular(m)") {
  Rng rng(29);
  for (int m = 3; m <= 5; ++m) {
    NilpotentAlgebra a = catalog("unitriangular(" + std::to_string(m) + ")");
    for (int t = 0; t < 20; ++t) {
      RatVec x = rng.next_rational_vec(static_cast<std::size_t>(a.dim()), 5, 3);
      RatVec y = rng.next_rational_vec(static_cast<std::size_t>(a.dim()), 5, 3);
      CHECK(bch(a, x, y) == bch_matrix_oracle(m, x, y));
    }
  }
}

TEST_CASE("symbolic BCH examples") {
  NilpotentAlgebra h = catalog("heisenberg(3)");
  const int nv = 4;  // x1, x2, x3, t
  std::vector<MultiPoly> x, zero_vec, dir;
  for (int i = 0; i < 3; ++i) x.push_back(MultiPoly::variable(nv, i));
  for (int i = 0; i < 3; ++i) zero_vec.push_back(MultiPoly(nv));
  dir = zero_vec;
  dir[0] = MultiPoly::variable(nv, 3);

  auto idres = bch_symbolic(h, x, zero_vec);
  for (int i = 0; i < 3; ++i) CHECK(idres[static_cast<std::size_t>(i)] == x[static_cast<std::size_t>(i)]);

  // bch((x1,x2,x3),(t,0,0)) = (x1+t, x2, x3 - t*x2/2)
  auto res = bch_symbolic(h, x, dir);
  CHECK(res[0] == x[0] + dir[0]);
  CHECK(res[1] == x[1]);
  CHECK(res[2] == x[2] - (dir[0] * x[1]).scaled(Rational(1, 2)));

  NilpotentAlgebra ab = catalog("abelian(3)");
  std::vector<MultiPoly> y;
  for (int i = 0; i < 3; ++i) y.push_back(MultiPoly::variable(nv, i) * MultiPoly::variable(nv, 3));
  auto sum = bch_symbolic(ab, x, y);
  for (int i = 0; i < 3; ++i)
    CHECK(sum[static_cast<std::size_t>(i)] == x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)]);
}

TEST_CASE("frame of heisenberg(3)") {
  PolyFrame f = frame(catalog("heisenberg(3)"));
  MultiPoly x1 = MultiPoly::variable(3, 0), x2 = MultiPoly::variable(3, 1);
  CHECK(f.A[0][2] == x2.scaled(Rational(-1, 2)));
  CHECK(f.A[1][2] == x1.scaled(Rational(1, 2)));
  CHECK(f.A[0][1].is_zero());
  CHECK(f.Ainv[0][2] == x2.scaled(Rational(1, 2)));
  CHECK(f.Ainv[1][2] == x1.scaled(Rational(-1, 2)));
}

TEST_CASE("frame of abelian is the identity") {
  PolyFrame f = frame(catalog("abelian(4)"));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j)
        CHECK(f.A[i][j] == MultiPoly::constant(4, 1));
      else
        CHECK(f.A[i][j].is_zero());
    }
}

TEST_CASE("frame shape invariants for the catalog") {
  for (const char* name : {"heisenberg(5)", "filiform(4)", "filiform(5)", "unitriangular(4)"}) {
    NilpotentAlgebra a = catalog(name);
    PolyFrame f = frame(a);  // frame() itself asserts unipotency/degree/A*Ainv
    const int s = a.nilpotency_class();
    for (int i = 0; i < f.n; ++i)
      for (int j = i + 1; j < f.n; ++j) CHECK(f.A[i][j].total_degree() <= s - 1);
  }
}

TEST_CASE("frame rows are tangent to bch(x, t e_i) (finite differences)") {
  NilpotentAlgebra a = catalog("filiform(4)");
  PolyFrame f = frame(a);
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    RatVec x = rng.next_rational_vec(4, 3, 2);
    std::vector<double> xd = to_double(x);
    for (int i = 0; i < 4; ++i) {
      double prev_err = -1;
      for (double t : {1e-2, 1e-3}) {
        GroupPoint step(4, Rational(0));
        step[static_cast<std::size_t>(i)] = Rational(t);
        GroupPoint moved = bch(a, x, step);
        double err = 0;
        for (int j = 0; j < 4; ++j) {
          double fd = (to_double(moved[static_cast<std::size_t>(j)]) - xd[static_cast<std::size_t>(j)]) / t;
          double row = f.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(xd);
          err = std::max(err, std::abs(fd - row));
        }
        if (prev_err >= 0) CHECK(err <= prev_err * 0.2 + 1e-6);  // linear decay in t
        prev_err = err;
      }
    }
  }
}

TEST_CASE("universal series matches the class-2 closed form") {
  // x + y + [x,y]/2, realized as words x:1, y:1, xy:1/4, yx:-1/4
  // (the xy and yx brackets combine to [x,y]/2).
  const auto& series = bch_series(2);
  REQUIRE(series.size() == 4);
  for (const auto& term : series) {
    if (term.word.size() == 1) {
      CHECK(term.coeff == Rational(1));
    } else {
      REQUIRE(term.word.size() == 2);
      if (term.word[0] == 0) CHECK(term.coeff == Rational(1, 4));   // xy
      if (term.word[0] == 1) CHECK(term.coeff == Rational(-1, 4));  // yx
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilfill/multipoly.hpp"
#include "nilfill/rng.hpp"

using namespace nilfill;

TEST_CASE("rational parsing and canonical form") {
  CHECK(rat_parse("3/6") == Rational(1, 2));
  CHECK(rat_parse("-4/2") == Rational(-2));
  CHECK(rat_parse("7") == Rational(7));
  CHECK(rat_parse("-1.25") == Rational(-5, 4));
  CHECK(rat_to_string(Rational(1, 2)) == "1/2");
  CHECK(rat_to_string(Rational(-3)) == "-3");
  CHECK_THROWS_AS(rat_parse("1/0"), ParseError);
  CHECK(rat_round_half_up(Rational(1, 2)) == 1);
  CHECK(rat_round_half_up(Rational(-1, 2)) == 0);
  CHECK(rat_floor(Rational(-3, 2)) == -2);
}

TEST_CASE("rational arithmetic is exact on random pairs") {
  Rng rng(7);
  for (int t = 0; t < 10000; ++t) {
    Rational a = rng.next_rational(1000, 50);
    Rational b = rng.next_rational(1000, 50);
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("polynomial arithmetic examples") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  CHECK((x1 * x2).str() == "x1*x2");
  MultiPoly p = x1 * x1 + x2.scaled(Rational(3));
  CHECK((p - p).is_zero());
  MultiPoly sq = (x1 + x2) * (x1 + x2);
  MultiPoly expected = x1 * x1 + (x1 * x2).scaled(2) + x2 * x2;
  CHECK(sq == expected);
  CHECK(sq.str() == "x1^2 + 2*x1*x2 + x2^2");
  CHECK_THROWS_AS(x1 + MultiPoly::variable(3, 0), DimensionMismatch);
}

TEST_CASE("polynomial evaluation") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  MultiPoly p = x1 * x2;
  CHECK(p.eval(RatVec{2, 3}) == Rational(6));
  CHECK(MultiPoly::constant(2, 5).eval(RatVec{Rational(9), Rational(-4)}) == Rational(5));
  MultiPoly q = x1 * x1 - x2;
  CHECK(q.eval(RatVec{Rational(1, 2), Rational(1, 4)}) == Rational(0));
  CHECK_THROWS_AS(p.eval(RatVec{1}), DimensionMismatch);
}

TEST_CASE("formal derivative") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  CHECK((x1 * x1 * x2).derivative(0) == (x1 * x2).scaled(2));
  CHECK(x1.derivative(1).is_zero());
  CHECK((x1.scaled(3) + x2).derivative(0) == MultiPoly::constant(2, 3));
}

TEST_CASE("majorant examples") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  UniMajorant m1 = majorize(x1 * x2);
  CHECK(m1.degree() == 2);
  CHECK(m1.eval(Rational(3)) == Rational(9));  // M(r) = r^2
  UniMajorant m2 = majorize(MultiPoly::constant(2, 5));
  CHECK(m2.degree() == 0);
  CHECK(m2.eval(Rational(100)) == Rational(5));
  // Heisenberg P_{1,3} = -x2/2: M(r) = r/2.
  UniMajorant m3 = majorize(x2.scaled(Rational(-1, 2)));
  CHECK(m3.degree() == 1);
  CHECK(m3.eval(Rational(2)) == Rational(1));
}

TEST_CASE("majorant soundness on random polynomials, exact rational evaluation") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int nvars = 1 + static_cast<int>(rng.next_below(3));
    MultiPoly p(nvars);
    int terms = 1 + static_cast<int>(rng.next_below(5));
    for (int t = 0; t < terms; ++t) {
      ExpVec e(static_cast<std::size_t>(nvars));
      for (auto& x : e) x = static_cast<unsigned>(rng.next_below(3));
      p.add_term(e, rng.next_rational(5, 3));
    }
    UniMajorant m = majorize(p);
    for (int s = 0; s < 25; ++s) {
      RatVec x = rng.next_rational_vec(static_cast<std::size_t>(nvars), 100, 4);
      // |p(x)| <= M(||x||_2), decided exactly at the true norm.
      CHECK(majorant_dominates_at_norm(m, p.eval(x), norm_sq(x)));
    }
  }
}

TEST_CASE("majorant bound at the exact norm, float sampling") {
  // |p(x)| <= M(||x||_2) with double evaluation and a tiny fp allowance.
  Rng rng(13);
  MultiPoly x1 = MultiPoly::variable(3, 0), x2 = MultiPoly::variable(3, 1),
            x3 = MultiPoly::variable(3, 2);
  MultiPoly p = x1 * x2 - x3.scaled(Rational(7, 2)) + x1 * x1 * x3;
  UniMajorant m = majorize(p);
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> x{rng.next_real(-100, 100), rng.next_real(-100, 100),
                          rng.next_real(-100, 100)};
    double nx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    CHECK(std::abs(p.eval(x)) <= m.eval(nx) * (1 + 1e-12));
  }
}

TEST_CASE("majorants are nondecreasing") {
  Rng rng(17);
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  UniMajorant m = majorize(x1 * x1 - x2.scaled(Rational(2, 3)));
  for (int t = 0; t < 200; ++t) {
    Rational r1 = rat_abs(rng.next_rational(50, 7));
    Rational r2 = r1 + rat_abs(rng.next_rational(50, 7));
    CHECK(m.eval(r1) <= m.eval(r2));
  }
}

TEST_CASE("graded-lex canonical text order") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  MultiPoly p = x2 + x1 + x1 * x1;
  CHECK(p.str() == "x1^2 + x1 + x2");
  CHECK(MultiPoly(2).str() == "0");
  CHECK(x2.scaled(Rational(-1, 2)).str() == "-1/2*x2");
}

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilfill/rational.hpp"

namespace nilfill {

using ExpVec = std::vector<unsigned>;

// Graded lexicographic order on exponent vectors: total degree first, then lex.
struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse multivariate polynomial over Q. Immutable in spirit: all operations
// return fresh values. No zero coefficients are ever stored.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, Rational, GradedLexLess>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rational& c);
  static MultiPoly variable(int nvars, int index);      // x_index (0-based)
  static MultiPoly monomial(int nvars, ExpVec e, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const Rational& c) const;

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Rational eval(const RatVec& x) const;
  double eval(const std::vector<double>& x) const;

  // Exact formal partial derivative with respect to variable `var`.
  MultiPoly derivative(int var) const;

  // Substitutes x_var := value exactly (result keeps nvars variables,
  // with the substituted variable no longer occurring).
  MultiPoly substitute(int var, const Rational& value) const;

  // Reinterprets the polynomial over the first `new_nvars` variables; every
  // term must have zero exponent beyond that range.
  MultiPoly restrict_vars(int new_nvars) const;

  // Canonical text form: terms in descending graded-lex order, coefficients
  // as p or p/q, variables printed x1..xn. The zero polynomial prints "0".
  std::string str() const;

  void add_term(const ExpVec& e, const Rational& c);  // accumulate, dropping zeros

 private:
  int nvars_;
  TermMap terms_;
};

// Univariate majorant M(r) = sum a_k r^k with all a_k >= 0, hence
// nondecreasing on [0, oo).
class UniMajorant {
 public:
  UniMajorant() = default;
  explicit UniMajorant(std::vector<Rational> coeffs);

  int degree() const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational eval(const Rational& r) const;
  double eval(double r) const;

  UniMajorant scaled(const Rational& c) const;
  UniMajorant plus_const(const Rational& c) const;

  // Coefficient-wise max; a sound upper bound for the pointwise max on r >= 0.
  static UniMajorant coeff_max(const UniMajorant& a, const UniMajorant& b);

  std::string str() const;

 private:
  std::vector<Rational> coeffs_;  // trailing zeros trimmed
};

// Degree-bucketed absolute-coefficient-sum majorant:
//   M(r) = sum_k b_k r^k,  b_k = sum of |c| over the degree-k terms of p,
// which satisfies |p(x)| <= M(||x||_2) for all x.
UniMajorant majorize(const MultiPoly& p);

// Decides value <= M(sqrt(r2)) exactly: M splits into even and odd parts
// M(r) = A(r^2) + r B(r^2) with nonnegative coefficients, so the comparison
// reduces to rational arithmetic (squaring once when the even part alone
// does not already dominate).
bool majorant_dominates_at_norm(const UniMajorant& M, const Rational& value,
                                const Rational& r2);

}  // namespace nilfill

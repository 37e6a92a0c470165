#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "nilfill/errors.hpp"

namespace nilfill {

// Exact arbitrary-precision scalars. cpp_rational keeps values in lowest
// terms with a positive denominator, which is exactly the invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Largest integer <= q.
inline Int rat_floor(const Rational& q) {
  Int n = numerator(q), d = denominator(q);
  Int quo = n / d;
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

// Nearest integer, ties toward +infinity.
inline Int rat_round_half_up(const Rational& q) { return rat_floor(q + Rational(1, 2)); }

// Parses "p", "p/q" (arbitrary precision) or a plain decimal like "-1.25".
Rational rat_parse(const std::string& s);

// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string rat_to_string(const Rational& q);

inline Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational norm_sq(const RatVec& a) { return dot(a, a); }

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec operator*(const Rational& c, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const RatVec& a) {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

std::vector<double> to_double(const RatVec& v);

// Row-reduces `rows` in place over Q (Gauss-Jordan); returns the rank.
// Rows below the rank are zeroed. Deterministic pivot choice (first nonzero).
int row_reduce(std::vector<RatVec>& rows);

// Exact inverse of a square matrix given as rows. Throws Error if singular.
std::vector<RatVec> invert_matrix(std::vector<RatVec> rows);

// Solves M^T x = v for x where M is given as rows (i.e. expresses v in the
// basis formed by the rows of M). Throws Error if M is singular.
RatVec solve_in_basis(const std::vector<RatVec>& basis_rows, const RatVec& v);

// Exact Gram determinant of the given column vectors.
Rational rational_gram_det(const std::vector<RatVec>& cols);

// A rational r with r >= sqrt(r2) and r^2 <= r2 * (1 + ~1e-12); exact-sound
// upper bound for use with nondecreasing majorants.
Rational rational_sqrt_upper(const Rational& r2);

// A rational r with 0 <= r <= sqrt(r2).
Rational rational_sqrt_lower(const Rational& r2);

}  // namespace nilfill

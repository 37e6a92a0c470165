#include "nilfill/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace nilfill {

Rational rat_parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Int(s));
    // Decimal literal: digits after the dot become a power-of-ten denominator.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    Int den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(Int(digits), den);
  } catch (const std::exception& e) {
    throw ParseError("bad rational literal '" + s + "': " + e.what());
  }
}

std::string rat_to_string(const Rational& q) {
  std::string n = numerator(q).str();
  if (denominator(q) == 1) return n;
  return n + "/" + denominator(q).str();
}

std::vector<double> to_double(const RatVec& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

int row_reduce(std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    Rational inv = Rational(1) / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t c = 0; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  rows.resize(rank == 0 ? 0 : rank);
  return static_cast<int>(rank);
}

std::vector<RatVec> invert_matrix(std::vector<RatVec> rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].resize(2 * n, Rational(0));
    rows[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && rows[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("singular matrix in invert_matrix");
    std::swap(rows[col], rows[pivot]);
    Rational inv = Rational(1) / rows[col][col];
    for (auto& x : rows[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) rows[r][c] -= f * rows[col][c];
    }
  }
  std::vector<RatVec> out(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = rows[i][n + j];
  return out;
}

Rational rational_gram_det(const std::vector<RatVec>& cols) {
  const std::size_t k = cols.size();
  if (k == 0) return 1;
  std::vector<RatVec> g(k, RatVec(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) g[a][b] = g[b][a] = dot(cols[a], cols[b]);
  Rational det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && g[piv][c] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != c) {
      std::swap(g[piv], g[c]);
      det = -det;
    }
    det *= g[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      Rational f = g[r][c] / g[c][c];
      for (std::size_t cc = c; cc < k; ++cc) g[r][cc] -= f * g[c][cc];
    }
  }
  return det;
}

Rational rational_sqrt_upper(const Rational& r2) {
  if (r2 < 0) throw Error("rational_sqrt_upper of a negative value");
  if (r2 == 0) return 0;
  double approx = std::sqrt(to_double(r2));
  Rational r(approx * (1 + 1e-13) + 1e-300);
  while (r * r < r2) r *= Rational(1000000000001LL, 1000000000000LL);
  return r;
}

Rational rational_sqrt_lower(const Rational& r2) {
  if (r2 < 0) throw Error("rational_sqrt_lower of a negative value");
  if (r2 == 0) return 0;
  double approx = std::sqrt(to_double(r2));
  Rational r(approx * (1 - 1e-13));
  if (r < 0) return 0;
  while (r * r > r2) r *= Rational(999999999999LL, 1000000000000LL);
  return r;
}

RatVec solve_in_basis(const std::vector<RatVec>& basis_rows, const RatVec& v) {
  // v = sum_k x_k * basis_rows[k]  <=>  B^T x = v.
  const std::size_t n = basis_rows.size();
  std::vector<RatVec> aug(v.size(), RatVec(n + 1));
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t k = 0; k < n; ++k) aug[r][k] = basis_rows[k][r];
    aug[r][n] = v[r];
  }
  int rank = row_reduce(aug);
  RatVec x(n, Rational(0));
  for (int r = 0; r < rank; ++r) {
    std::size_t lead = 0;
    while (lead <= n && aug[r][lead] == 0) ++lead;
    if (lead == n) throw Error("inconsistent system in solve_in_basis");
    if (lead < n) x[lead] = aug[r][n];
  }
  // Verify (the basis may be rank-deficient, in which case this catches it).
  RatVec check(v.size(), Rational(0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < v.size(); ++r) check[r] += x[k] * basis_rows[k][r];
  for (std::size_t r = 0; r < v.size(); ++r)
    if (check[r] != v[r]) throw Error("solve_in_basis: vector outside span");
  return x;
}

}  // namespace nilfill

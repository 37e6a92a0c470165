#include "nilfill/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace nilfill {

void StructureConstants::set(int i, int j, RatVec v) {
  if (i == j) throw Error("structure constants: i == j");
  if (i > j) {
    for (auto& x : v) x = -x;
    std::swap(i, j);
  }
  if (is_zero(v)) {
    brackets.erase({i, j});
  } else {
    brackets[{i, j}] = std::move(v);
  }
}

RatVec StructureConstants::bracket(const RatVec& u, const RatVec& v) const {
  return bracket<Rational>(
      u, v, [] { return Rational(0); },
      [](const Rational& c, const Rational& w) { return Rational(c * w); });
}

std::vector<double> StructureConstants::bracket_d(const std::vector<double>& u,
                                                  const std::vector<double>& v) const {
  return bracket<double>(
      u, v, [] { return 0.0; },
      [](const Rational& c, double w) { return to_double(c) * w; });
}

namespace {

RatVec basis_vec(int n, int i) {
  RatVec v(n, Rational(0));
  v[i] = 1;
  return v;
}

// Spanning set of [g, V] for V given by basis rows; returns a row-reduced basis.
std::vector<RatVec> bracket_span(const StructureConstants& c, const std::vector<RatVec>& V) {
  std::vector<RatVec> rows;
  for (int a = 0; a < c.n; ++a) {
    RatVec ea = basis_vec(c.n, a);
    for (const auto& v : V) {
      RatVec w = c.bracket(ea, v);
      if (!is_zero(w)) rows.push_back(std::move(w));
    }
  }
  row_reduce(rows);
  return rows;
}

}  // namespace

void check_jacobi(const StructureConstants& c) {
  for (int i = 0; i < c.n; ++i) {
    RatVec ei = basis_vec(c.n, i);
    for (int j = i + 1; j < c.n; ++j) {
      RatVec ej = basis_vec(c.n, j);
      RatVec bij = c.bracket(ei, ej);
      for (int k = j + 1; k < c.n; ++k) {
        RatVec ek = basis_vec(c.n, k);
        RatVec s = c.bracket(bij, ek) + c.bracket(c.bracket(ej, ek), ei) +
                   c.bracket(c.bracket(ek, ei), ej);
        if (!is_zero(s)) {
          std::ostringstream os;
          os << "sum of cyclic brackets is nonzero";
          throw JacobiViolated(i + 1, j + 1, k + 1, os.str());
        }
      }
    }
  }
}

std::pair<NilpotentAlgebra, std::vector<RatVec>> NilpotentAlgebra::triangularize(
    const StructureConstants& raw) {
  if (raw.n < 1) throw Error("algebra dimension must be >= 1");
  check_jacobi(raw);

  // Lower central series: lcs[0] = g, lcs[m] = [g, lcs[m-1]].
  std::vector<std::vector<RatVec>> lcs;
  {
    std::vector<RatVec> full;
    for (int i = 0; i < raw.n; ++i) full.push_back(basis_vec(raw.n, i));
    lcs.push_back(std::move(full));
  }
  while (!lcs.back().empty()) {
    std::vector<RatVec> next = bracket_span(raw, lcs.back());
    if (next.size() >= lcs.back().size()) {
      throw NotNilpotent("lower central series stabilizes at dimension " +
                         std::to_string(next.size()));
    }
    lcs.push_back(std::move(next));
  }
  const int s = static_cast<int>(lcs.size()) - 1;  // lcs[s] == 0

  // Build an adapted basis from the deepest step up: vectors entering at
  // depth d span a complement of g^(d+1) inside g^(d).
  std::vector<RatVec> reduced;  // row-reduced accumulator
  std::vector<std::pair<int, RatVec>> picked;
  for (int d = s; d >= 1; --d) {
    for (const auto& cand : lcs[static_cast<std::size_t>(d - 1)]) {
      std::vector<RatVec> trial = reduced;
      trial.push_back(cand);
      if (row_reduce(trial) > static_cast<int>(reduced.size())) {
        reduced = std::move(trial);
        picked.emplace_back(d, cand);
      }
    }
  }
  if (static_cast<int>(picked.size()) != raw.n)
    throw Error("internal: adapted basis has wrong size");

  std::stable_sort(picked.begin(), picked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<RatVec> T;  // rows = new basis in old coordinates
  std::vector<int> depths;
  for (auto& [d, v] : picked) {
    depths.push_back(d);
    T.push_back(std::move(v));
  }
  std::vector<RatVec> Tinv = invert_matrix(T);

  StructureConstants out;
  out.n = raw.n;
  for (int i = 0; i < raw.n; ++i) {
    for (int j = i + 1; j < raw.n; ++j) {
      RatVec w = raw.bracket(T[i], T[j]);
      RatVec gamma(raw.n, Rational(0));
      for (int t = 0; t < raw.n; ++t) {
        if (w[t] == 0) continue;
        for (int k = 0; k < raw.n; ++k) gamma[k] += w[t] * Tinv[t][k];
      }
      out.set(i, j, std::move(gamma));
    }
  }

  // Triangularity must hold in the adapted basis.
  for (const auto& [ij, coeffs] : out.brackets) {
    for (int k = 0; k <= ij.second; ++k) {
      if (coeffs[k] != 0)
        throw Error("internal: triangularity failed at [(e" + std::to_string(ij.first + 1) +
                    ",e" + std::to_string(ij.second + 1) + ")]^" + std::to_string(k + 1));
    }
  }

  NilpotentAlgebra alg;
  alg.c_ = std::move(out);
  alg.class_ = s;
  alg.depth_ = std::move(depths);
  return {std::move(alg), std::move(T)};
}

NilpotentAlgebra NilpotentAlgebra::validate(const StructureConstants& raw) {
  return triangularize(raw).first;
}

int NilpotentAlgebra::grading_dim(int d) const {
  int c = 0;
  for (int x : depth_)
    if (x == d) ++c;
  return c;
}

std::vector<int> NilpotentAlgebra::lcs_dims() const {
  std::vector<int> dims(static_cast<std::size_t>(class_), 0);
  for (int x : depth_)
    for (int d = 1; d <= x; ++d) ++dims[static_cast<std::size_t>(d - 1)];
  return dims;
}

int NilpotentAlgebra::homogeneous_dimension() const {
  int N = 0;
  for (int x : depth_) N += x;
  return N;
}

namespace {

bool parse_named(const std::string& name, std::string& head, int& param) {
  auto lp = name.find('(');
  auto rp = name.find(')');
  if (lp == std::string::npos || rp == std::string::npos || rp < lp) return false;
  head = name.substr(0, lp);
  try {
    param = std::stoi(name.substr(lp + 1, rp - lp - 1));
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

StructureConstants catalog_constants(const std::string& name) {
  std::string head;
  int p = 0;
  if (!parse_named(name, head, p)) throw ParseError("bad algebra name '" + name + "'");
  StructureConstants c;
  if (head == "abelian") {
    if (p < 1) throw ParseError("abelian(n) needs n >= 1");
    c.n = p;
    return c;
  }
  if (head == "heisenberg") {
    if (p < 3 || p % 2 == 0) throw ParseError("heisenberg(2m+1) needs odd n >= 3");
    int m = (p - 1) / 2;
    c.n = p;
    for (int i = 0; i < m; ++i) {
      RatVec v(c.n, Rational(0));
      v[static_cast<std::size_t>(2 * m)] = 1;
      c.set(i, m + i, std::move(v));
    }
    return c;
  }
  if (head == "filiform") {
    if (p < 3) throw ParseError("filiform(n) needs n >= 3");
    c.n = p;
    for (int i = 1; i <= p - 2; ++i) {  // [e_1, e_{i+1}] = e_{i+2} in 1-based terms
      RatVec v(c.n, Rational(0));
      v[static_cast<std::size_t>(i + 1)] = 1;
      c.set(0, i, std::move(v));
    }
    return c;
  }
  if (head == "unitriangular") {
    if (p < 2) throw ParseError("unitriangular(m) needs m >= 2");
    int m = p;
    // Basis E_{ab}, a < b, ordered by (b - a, a): the weight b - a is the
    // lcs depth, so this ordering is already triangular.
    std::vector<std::pair<int, int>> basis;
    for (int w = 1; w < m; ++w)
      for (int a = 0; a + w < m; ++a) basis.emplace_back(a, a + w);
    auto index_of = [&](int a, int b) -> int {
      for (std::size_t t = 0; t < basis.size(); ++t)
        if (basis[t] == std::make_pair(a, b)) return static_cast<int>(t);
      return -1;
    };
    c.n = static_cast<int>(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        auto [a, b] = basis[i];
        auto [x, y] = basis[j];
        // [E_ab, E_xy] = delta_{bx} E_ay - delta_{ya} E_xb
        RatVec v(c.n, Rational(0));
        if (b == x) v[static_cast<std::size_t>(index_of(a, y))] += 1;
        if (y == a) v[static_cast<std::size_t>(index_of(x, b))] -= 1;
        c.set(static_cast<int>(i), static_cast<int>(j), std::move(v));
      }
    }
    return c;
  }
  throw ParseError("unknown catalog algebra '" + name + "'");
}

NilpotentAlgebra catalog(const std::string& name) {
  return NilpotentAlgebra::validate(catalog_constants(name));
}

}  // namespace nilfill

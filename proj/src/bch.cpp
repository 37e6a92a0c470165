#include "nilfill/bch.hpp"

#include <map>
#include <mutex>

namespace nilfill {

namespace {

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct SeriesBuilder {
  int max_degree;
  std::map<std::vector<std::uint8_t>, Rational> acc;
  std::vector<std::uint8_t> word;
  Rational fact_prod = 1;  // product of p_i! q_i! over blocks so far

  void emit(int k) {
    int m = static_cast<int>(word.size());
    Rational sign = (k % 2 == 1) ? 1 : -1;
    Rational coeff = sign / (Rational(k) * Rational(m) * fact_prod);
    acc[word] += coeff;
  }

  // Appends blocks (p, q) != (0, 0) recursively; every prefix with >= 1 block
  // is itself a term of the outer sum.
  void extend(int k) {
    int remaining = max_degree - static_cast<int>(word.size());
    for (int p = 0; p <= remaining; ++p) {
      for (int q = 0; p + q <= remaining; ++q) {
        if (p == 0 && q == 0) continue;
        Rational saved = fact_prod;
        std::size_t saved_len = word.size();
        word.insert(word.end(), static_cast<std::size_t>(p), 0);
        word.insert(word.end(), static_cast<std::size_t>(q), 1);
        fact_prod = saved * factorial(p) * factorial(q);
        emit(k + 1);
        extend(k + 1);
        word.resize(saved_len);
        fact_prod = saved;
      }
    }
  }
};

std::vector<BchTerm> build_series(int max_degree) {
  SeriesBuilder b;
  b.max_degree = max_degree;
  b.extend(0);
  std::vector<BchTerm> out;
  for (auto& [w, c] : b.acc) {
    if (c == 0) continue;
    // [..., a, a] vanishes identically.
    std::size_t m = w.size();
    if (m >= 2 && w[m - 1] == w[m - 2]) continue;
    out.push_back({c, w});
  }
  return out;
}

std::mutex series_mutex;
std::map<int, std::vector<BchTerm>> series_cache;

// Evaluates the series over any coefficient scalar with the given zero/mul.
template <typename K, typename Zero, typename Mul>
std::vector<K> bch_generic(const NilpotentAlgebra& a, const std::vector<K>& x,
                           const std::vector<K>& y, Zero zero, Mul mul) {
  const std::size_t n = static_cast<std::size_t>(a.dim());
  if (x.size() != n || y.size() != n) throw DimensionMismatch("bch operands");
  const auto& series = bch_series(a.nilpotency_class());
  std::vector<K> z(n, zero());
  for (const auto& term : series) {
    const auto& w = term.word;
    std::vector<K> v = w.back() ? y : x;
    for (std::size_t i = w.size() - 1; i-- > 0;) {
      const std::vector<K>& letter = w[i] ? y : x;
      v = a.constants().bracket(letter, v, zero, mul);
    }
    for (std::size_t k = 0; k < n; ++k) z[k] = z[k] + mul(term.coeff, v[k]);
  }
  return z;
}

}  // namespace

const std::vector<BchTerm>& bch_series(int max_degree) {
  std::lock_guard<std::mutex> lock(series_mutex);
  auto it = series_cache.find(max_degree);
  if (it == series_cache.end())
    it = series_cache.emplace(max_degree, build_series(max_degree)).first;
  return it->second;
}

GroupPoint bch(const NilpotentAlgebra& a, const GroupPoint& x, const GroupPoint& y) {
  return bch_generic<Rational>(
      a, x, y, [] { return Rational(0); },
      [](const Rational& c, const Rational& w) { return Rational(c * w); });
}

GroupPoint group_inverse(const GroupPoint& x) {
  GroupPoint y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
  return y;
}

std::vector<MultiPoly> bch_symbolic(const NilpotentAlgebra& a,
                                    const std::vector<MultiPoly>& left,
                                    const std::vector<MultiPoly>& right) {
  if (left.empty()) throw DimensionMismatch("bch_symbolic operands");
  const int nv = left[0].nvars();
  return bch_generic<MultiPoly>(
      a, left, right, [nv] { return MultiPoly(nv); },
      [](const Rational& c, const MultiPoly& w) { return w.scaled(c); });
}

std::vector<std::vector<MultiPoly>> poly_mat_mul(const std::vector<std::vector<MultiPoly>>& A,
                                                 const std::vector<std::vector<MultiPoly>>& B) {
  const std::size_t n = A.size();
  const int nv = A[0][0].nvars();
  std::vector<std::vector<MultiPoly>> C(n, std::vector<MultiPoly>(n, MultiPoly(nv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (A[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (B[k][j].is_zero()) continue;
        C[i][j] = C[i][j] + A[i][k] * B[k][j];
      }
    }
  return C;
}

PolyFrame frame(const NilpotentAlgebra& a) {
  const int n = a.dim();
  const int nv = n + 1;  // auxiliary variable t stored as x_{n+1}
  const int t_var = n;

  std::vector<MultiPoly> x_vec;
  for (int i = 0; i < n; ++i) x_vec.push_back(MultiPoly::variable(nv, i));

  PolyFrame f;
  f.n = n;
  f.A.assign(static_cast<std::size_t>(n), std::vector<MultiPoly>(n, MultiPoly(n)));
  for (int i = 0; i < n; ++i) {
    std::vector<MultiPoly> dir(static_cast<std::size_t>(n), MultiPoly(nv));
    dir[static_cast<std::size_t>(i)] = MultiPoly::variable(nv, t_var);
    std::vector<MultiPoly> z = bch_symbolic(a, x_vec, dir);
    for (int j = 0; j < n; ++j) {
      f.A[i][j] = z[j].derivative(t_var).substitute(t_var, Rational(0)).restrict_vars(n);
    }
  }

  // Shape and degree checks (unipotent, strictly upper, deg <= s-1).
  const MultiPoly one = MultiPoly::constant(n, 1);
  for (int i = 0; i < n; ++i) {
    if (!(f.A[i][i] == one)) throw Error("frame: diagonal entry is not 1");
    for (int j = 0; j < i; ++j)
      if (!f.A[i][j].is_zero()) throw Error("frame: lower-triangular entry is nonzero");
    for (int j = i + 1; j < n; ++j)
      if (f.A[i][j].total_degree() > a.nilpotency_class() - 1)
        throw Error("frame: entry degree exceeds s-1");
  }

  // Ainv = I - U + U^2 - ... for the strictly upper part U (nilpotent).
  std::vector<std::vector<MultiPoly>> U(static_cast<std::size_t>(n),
                                        std::vector<MultiPoly>(n, MultiPoly(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) U[i][j] = f.A[i][j];

  auto identity = [&] {
    std::vector<std::vector<MultiPoly>> I(static_cast<std::size_t>(n),
                                          std::vector<MultiPoly>(n, MultiPoly(n)));
    for (int i = 0; i < n; ++i) I[i][i] = one;
    return I;
  };
  f.Ainv = identity();
  std::vector<std::vector<MultiPoly>> P = U;
  int sign = -1;
  for (int k = 1; k < n; ++k) {
    bool all_zero = true;
    for (int i = 0; i < n && all_zero; ++i)
      for (int j = 0; j < n && all_zero; ++j)
        if (!P[i][j].is_zero()) all_zero = false;
    if (all_zero) break;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        f.Ainv[i][j] = sign > 0 ? f.Ainv[i][j] + P[i][j] : f.Ainv[i][j] - P[i][j];
    P = poly_mat_mul(P, U);
    sign = -sign;
  }

  auto prod = poly_mat_mul(f.A, f.Ainv);
  auto I = identity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(prod[i][j] == I[i][j])) throw Error("frame: A * Ainv != I");
  return f;
}

const PolyFrame& FrameHandle::get() const {
  if (!frame_) frame_ = std::make_shared<const PolyFrame>(frame(*alg_));
  return *frame_;
}

}  // namespace nilfill

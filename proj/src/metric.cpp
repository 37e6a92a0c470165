#include "nilfill/metric.hpp"

#include <algorithm>
#include <cmath>

#include "nilfill/simplex_ref.hpp"

namespace nilfill {

std::vector<MultiIndex> all_multiindices(int n, int d) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(d));
  for (int t = 0; t < d; ++t) cur[static_cast<std::size_t>(t)] = t;
  if (d == 0) {
    out.push_back({});
    return out;
  }
  if (d > n) return out;
  while (true) {
    out.push_back(cur);
    int t = d - 1;
    while (t >= 0 && cur[static_cast<std::size_t>(t)] == n - d + t) --t;
    if (t < 0) break;
    ++cur[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < d; ++u)
      cur[static_cast<std::size_t>(u)] = cur[static_cast<std::size_t>(u - 1)] + 1;
  }
  return out;
}

MultiPoly poly_det(const std::vector<std::vector<MultiPoly>>& M) {
  const std::size_t m = M.size();
  const int nv = M[0][0].nvars();
  if (m == 1) return M[0][0];
  MultiPoly acc(nv);
  for (std::size_t c = 0; c < m; ++c) {
    if (M[0][c].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> sub;
    sub.reserve(m - 1);
    for (std::size_t r = 1; r < m; ++r) {
      std::vector<MultiPoly> row;
      row.reserve(m - 1);
      for (std::size_t cc = 0; cc < m; ++cc)
        if (cc != c) row.push_back(M[r][cc]);
      sub.push_back(std::move(row));
    }
    MultiPoly term = M[0][c] * poly_det(sub);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

std::vector<std::vector<MultiPoly>> lambda_matrix(const std::vector<std::vector<MultiPoly>>& M,
                                                  int d) {
  const int n = static_cast<int>(M.size());
  if (d < 1 || d > n) throw DimensionMismatch("lambda_matrix degree out of range");
  auto idx = all_multiindices(n, d);
  const std::size_t m = idx.size();
  std::vector<std::vector<MultiPoly>> out(m);
  for (std::size_t a = 0; a < m; ++a) {
    out[a].reserve(m);
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<std::vector<MultiPoly>> sub(static_cast<std::size_t>(d));
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c)
          sub[static_cast<std::size_t>(r)].push_back(
              M[static_cast<std::size_t>(idx[a][static_cast<std::size_t>(r)])]
               [static_cast<std::size_t>(idx[b][static_cast<std::size_t>(c)])]);
      }
      out[a].push_back(poly_det(sub));
    }
  }
  return out;
}

double gram_det(const std::vector<std::vector<double>>& cols) {
  const std::size_t d = cols.size();
  std::vector<std::vector<double>> g(d, std::vector<double>(d));
  double hadamard = 1.0;  // prod ||col||^2, an upper bound for the det
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      double s = 0;
      for (std::size_t r = 0; r < cols[a].size(); ++r) s += cols[a][r] * cols[b][r];
      g[a][b] = g[b][a] = s;
      if (a == b) hadamard *= s;
    }
  // LU with partial pivoting.
  double det = 1.0;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(g[r][c]) > std::abs(g[piv][c])) piv = r;
    if (g[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(g[piv], g[c]);
      det = -det;
    }
    det *= g[c][c];
    for (std::size_t r = c + 1; r < d; ++r) {
      double f = g[r][c] / g[c][c];
      for (std::size_t cc = c; cc < d; ++cc) g[r][cc] -= f * g[c][cc];
    }
  }
  // Near-degenerate frames leave only rounding dust in the determinant;
  // values this far below the Hadamard bound are not resolvable in double
  // and would make relative-tolerance quadrature chase noise.
  if (std::abs(det) < 1e-24 * hadamard) return 0.0;
  return det;
}

MetricContext::MetricContext(NilpotentAlgebra a) : alg_(std::move(a)), frame_(frame(alg_)) {
  for (int i = 0; i < frame_.n; ++i)
    for (int j = i + 1; j < frame_.n; ++j)
      if (!frame_.Ainv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
        ainv_entries_.push_back(
            {i, j,
             kernels::CompiledPoly::compile(
                 frame_.Ainv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])});
}

void MetricContext::pulled_norms(const double* x_soa, std::size_t npts,
                                 const std::vector<std::vector<double>>& edges, double* out,
                                 double* hadamard_sum) const {
  const int n = frame_.n;
  const std::size_t d = edges.size();

  std::vector<std::vector<double>> entry_vals(ainv_entries_.size());
  for (std::size_t t = 0; t < ainv_entries_.size(); ++t) {
    entry_vals[t].resize(npts);
    kernels::eval_batch(ainv_entries_[t].poly, x_soa, npts, entry_vals[t].data());
  }

  double had_acc = 0;
  std::vector<std::vector<double>> W(static_cast<std::size_t>(n),
                                     std::vector<double>(d));
  std::vector<std::vector<double>> Wcols(d, std::vector<double>(static_cast<std::size_t>(n)));
  for (std::size_t p = 0; p < npts; ++p) {
    // alpha-coordinates: W = Ainv(x)^T E, i.e. W[j] = E[j] + sum_{i<j} a_ij E[i].
    for (int j = 0; j < n; ++j)
      for (std::size_t c = 0; c < d; ++c) W[static_cast<std::size_t>(j)][c] = edges[c][static_cast<std::size_t>(j)];
    for (std::size_t t = 0; t < ainv_entries_.size(); ++t) {
      const double a = entry_vals[t][p];
      const auto& ent = ainv_entries_[t];
      for (std::size_t c = 0; c < d; ++c)
        W[static_cast<std::size_t>(ent.j)][c] += a * edges[c][static_cast<std::size_t>(ent.i)];
    }
    for (std::size_t c = 0; c < d; ++c)
      for (int j = 0; j < n; ++j) Wcols[c][static_cast<std::size_t>(j)] = W[static_cast<std::size_t>(j)][c];
    double g = gram_det(Wcols);
    out[p] = g > 0 ? std::sqrt(g) : 0.0;
    if (hadamard_sum) {
      double had = 1;
      for (std::size_t c = 0; c < d; ++c) {
        double s = 0;
        for (int j = 0; j < n; ++j)
          s += Wcols[c][static_cast<std::size_t>(j)] * Wcols[c][static_cast<std::size_t>(j)];
        had *= std::sqrt(s);
      }
      had_acc += had;
    }
  }
  if (hadamard_sum) *hadamard_sum = had_acc;
}

double MetricContext::dvector_norm(const std::vector<double>& x,
                                   const std::vector<std::vector<double>>& edges,
                                   MetricKind kind) const {
  if (static_cast<int>(x.size()) != frame_.n) throw DimensionMismatch("dvector_norm point");
  for (const auto& e : edges)
    if (static_cast<int>(e.size()) != frame_.n) throw DimensionMismatch("dvector_norm edge");
  if (kind == MetricKind::euclidean) {
    double g = gram_det(edges);
    return g > 0 ? std::sqrt(g) : 0.0;
  }
  std::vector<double> soa(x.size());
  for (std::size_t v = 0; v < x.size(); ++v) soa[v] = x[v];
  double out = 0;
  pulled_norms(soa.data(), 1, edges, &out);
  return out;
}

const SimilarityBound& MetricContext::similarity_bound(int d) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = bounds_.find(d);
  if (it != bounds_.end()) return it->second;

  auto lamA = lambda_matrix(frame_.A, d);
  auto lamAinv = lambda_matrix(frame_.Ainv, d);
  UniMajorant off;  // coefficient-wise max over the strictly off-diagonal entries
  for (const auto* mat : {&lamA, &lamAinv}) {
    for (std::size_t a = 0; a < mat->size(); ++a)
      for (std::size_t b = 0; b < mat->size(); ++b) {
        if (a == b) continue;
        if ((*mat)[a][b].is_zero()) continue;
        off = UniMajorant::coeff_max(off, majorize((*mat)[a][b]));
      }
  }
  // Row-sum style operator bound on unipotent matrices, both directions:
  // ||B||_op <= m * (1 + max off-diagonal majorant), m = C(n, d).
  Rational m_d = 1;
  for (int t = 0; t < d; ++t) m_d = m_d * Rational(frame_.n - t) / Rational(t + 1);
  SimilarityBound sb;
  sb.d = d;
  sb.R = off.plus_const(1).scaled(m_d);
  auto [pos, inserted] = bounds_.emplace(d, std::move(sb));
  return pos->second;
}

std::pair<double, double> MetricContext::simplex_mass(
    const std::vector<std::vector<double>>& verts, MetricKind kind,
    const QuadratureSpec& quad) const {
  const int k = static_cast<int>(verts.size()) - 1;
  if (k < 0) throw DimensionMismatch("simplex with no vertices");
  if (k == 0) return {1.0, 0.0};

  double kfact = 1.0;
  for (int t = 2; t <= k; ++t) kfact *= t;

  std::vector<std::vector<double>> edges(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    edges[static_cast<std::size_t>(c)].resize(verts[0].size());
    for (std::size_t r = 0; r < verts[0].size(); ++r)
      edges[static_cast<std::size_t>(c)][r] =
          verts[static_cast<std::size_t>(c + 1)][r] - verts[0][r];
  }

  if (kind == MetricKind::euclidean) {
    double g = gram_det(edges);
    return {g > 0 ? std::sqrt(g) / kfact : 0.0, 0.0};
  }

  const int n = frame_.n;
  // Points-per-level guard: 2^(k*level) barycenters.
  const int level_cap = std::min(quad.max_subdivision, std::max(2, 18 / k));

  auto integrate = [&](int level) {
    const auto& table = barycenter_table(k, level);
    const std::size_t npts = table.size() / static_cast<std::size_t>(k + 1);
    std::vector<double> soa(static_cast<std::size_t>(n) * npts);
    for (std::size_t p = 0; p < npts; ++p) {
      for (int v = 0; v < n; ++v) {
        double acc = 0;
        for (int s = 0; s <= k; ++s)
          acc += table[p * static_cast<std::size_t>(k + 1) + static_cast<std::size_t>(s)] *
                 verts[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
        soa[static_cast<std::size_t>(v) * npts + p] = acc;
      }
    }
    std::vector<double> norms(npts);
    pulled_norms(soa.data(), npts, edges, norms.data());
    double sum = 0;
    for (double x : norms) sum += x;
    return sum / (kfact * static_cast<double>(npts));
  };

  double prev = integrate(std::max(0, quad.order - 1));
  double cur = prev;
  for (int level = std::max(1, quad.order); level <= level_cap; ++level) {
    cur = integrate(level);
    double err = std::abs(cur - prev) / 3.0;
    double value = cur + (cur - prev) / 3.0;
    if (err <= quad.tolerance * std::abs(value) + quad.abs_floor) return {value, err};
    if (level < level_cap) prev = cur;
  }
  throw NonConvergent("simplex quadrature", cur, prev);
}

}  // namespace nilfill

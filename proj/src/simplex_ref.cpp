#include "nilfill/simplex_ref.hpp"

#include <map>
#include <mutex>

namespace nilfill {

namespace {

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// Converts a point of the doubled order simplex {2 >= x_1 >= ... >= x_k >= 0}
// (integer coordinates) to барycentric weights over the parent vertices.
RatVec to_barycentric(const std::vector<int>& p) {
  const int k = static_cast<int>(p.size());
  RatVec lambda(static_cast<std::size_t>(k + 1));
  Rational half(1, 2);
  // x_i = p_i / 2; lambda_0 = 1 - x_1, lambda_i = x_i - x_{i+1}, lambda_k = x_k.
  lambda[0] = 1 - half * p[0];
  for (int i = 1; i < k; ++i) lambda[static_cast<std::size_t>(i)] = half * (p[i - 1] - p[i]);
  lambda[static_cast<std::size_t>(k)] = half * p[k - 1];
  return lambda;
}

std::vector<RefChild> build_children(int k) {
  std::vector<RefChild> out;
  if (k == 0) {
    out.push_back({{RatVec{Rational(1)}}, 1});
    return out;
  }
  // Children of the edgewise subdivision correspond to a sorted 0/1 offset
  // vector (j leading ones) plus an interleaving of the index blocks
  // {1..j} and {j+1..k}, each block kept in increasing order.
  for (int j = 0; j <= k; ++j) {
    std::vector<int> slots(static_cast<std::size_t>(k), 0);
    // Choose which positions of the step sequence take indices from the
    // ones-block; iterate subsets of size j in lex order via a bitmask walk.
    std::vector<int> comb(static_cast<std::size_t>(j));
    for (int t = 0; t < j; ++t) comb[static_cast<std::size_t>(t)] = t;
    while (true) {
      std::fill(slots.begin(), slots.end(), 0);
      for (int t = 0; t < j; ++t) slots[static_cast<std::size_t>(comb[static_cast<std::size_t>(t)])] = 1;
      std::vector<int> pi;
      int next_one = 0, next_zero = j;
      for (int s = 0; s < k; ++s) pi.push_back(slots[static_cast<std::size_t>(s)] ? next_one++ : next_zero++);

      RefChild child;
      child.sign = perm_sign(pi);
      std::vector<int> p(static_cast<std::size_t>(k), 0);
      for (int t = 0; t < j; ++t) p[static_cast<std::size_t>(t)] = 1;
      child.bary.push_back(to_barycentric(p));
      for (int r = 0; r < k; ++r) {
        ++p[static_cast<std::size_t>(pi[static_cast<std::size_t>(r)])];
        child.bary.push_back(to_barycentric(p));
      }
      out.push_back(std::move(child));

      // next combination
      if (j == 0) break;
      int t = j - 1;
      while (t >= 0 && comb[static_cast<std::size_t>(t)] == k - j + t) --t;
      if (t < 0) break;
      ++comb[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < j; ++u)
        comb[static_cast<std::size_t>(u)] = comb[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
  return out;
}

std::mutex cache_mutex;
std::map<int, std::vector<RefChild>> children_cache;
std::map<std::pair<int, int>, std::vector<double>> table_cache;

}  // namespace

const std::vector<RefChild>& ref_children(int k) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = children_cache.find(k);
  if (it == children_cache.end()) it = children_cache.emplace(k, build_children(k)).first;
  return it->second;
}

const std::vector<double>& barycenter_table(int k, int level) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = table_cache.find({k, level});
    if (it != table_cache.end()) return it->second;
  }
  const int m = k + 1;
  std::vector<double> table;
  if (level == 0) {
    table.assign(static_cast<std::size_t>(m), 1.0 / m);
  } else {
    const auto& prev = barycenter_table(k, level - 1);
    const auto& children = ref_children(k);
    std::vector<std::vector<double>> child_bary;  // precomputed double transforms
    for (const auto& c : children) {
      std::vector<double> flat;
      for (const auto& row : c.bary)
        for (const auto& w : row) flat.push_back(to_double(w));
      child_bary.push_back(std::move(flat));
    }
    const std::size_t rows_prev = prev.size() / static_cast<std::size_t>(m);
    table.reserve(children.size() * prev.size());
    for (const auto& cb : child_bary) {
      for (std::size_t r = 0; r < rows_prev; ++r) {
        // combined[v] = sum_s prev[r][s] * child.bary[s][v]
        for (int v = 0; v < m; ++v) {
          double acc = 0;
          for (int s = 0; s < m; ++s)
            acc += prev[r * static_cast<std::size_t>(m) + static_cast<std::size_t>(s)] *
                   cb[static_cast<std::size_t>(s * m + v)];
          table.push_back(acc);
        }
      }
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = table_cache.emplace(std::make_pair(k, level), std::move(table));
  return it->second;
}

}  // namespace nilfill

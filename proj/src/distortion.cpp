#include "nilfill/distortion.hpp"

#include <algorithm>
#include <cmath>

#include <boost/integer/common_factor_rt.hpp>

namespace nilfill {

LatticeSpec default_lattice(const NilpotentAlgebra& a) {
  LatticeSpec spec;
  spec.algebra = &a;
  for (int i = 0; i < a.dim(); ++i) {
    if (a.depth(i) != 1) continue;
    GroupPoint plus(static_cast<std::size_t>(a.dim()), Rational(0));
    plus[static_cast<std::size_t>(i)] = 1;
    GroupPoint minus(static_cast<std::size_t>(a.dim()), Rational(0));
    minus[static_cast<std::size_t>(i)] = -1;
    spec.generators.push_back(std::move(plus));
    spec.generators.push_back(std::move(minus));
  }
  return spec;
}

std::vector<std::size_t> BfsBall::ball_sizes() const {
  std::vector<std::size_t> out;
  std::size_t acc = 0;
  for (std::size_t s : sphere_sizes) {
    acc += s;
    out.push_back(acc);
  }
  return out;
}

BfsBall bfs_ball(const LatticeSpec& spec, int radius) {
  if (!spec.algebra) throw Error("lattice spec has no algebra");
  const NilpotentAlgebra& a = *spec.algebra;
  BfsBall out;
  GroupPoint id(static_cast<std::size_t>(a.dim()), Rational(0));
  out.dist.emplace(id, 0);
  out.sphere_sizes.push_back(1);
  std::vector<GroupPoint> frontier{id};
  for (int r = 1; r <= radius; ++r) {
    std::vector<GroupPoint> next;
    for (const auto& x : frontier) {
      for (const auto& g : spec.generators) {
        GroupPoint z = bch(a, x, g);
        auto [it, inserted] = out.dist.emplace(z, r);
        if (!inserted) continue;
        for (const auto& coord : z)
          out.denominator_lcm =
              boost::integer::lcm(out.denominator_lcm, Int(denominator(coord)));
        if (out.dist.size() > spec.ball_cap)
          throw BallTooLarge(out.dist.size(), spec.ball_cap);
        next.push_back(std::move(z));
      }
    }
    out.sphere_sizes.push_back(next.size());
    frontier = std::move(next);
  }
  return out;
}

double phi(const NilpotentAlgebra& a, const std::vector<double>& x) {
  double total = 0;
  for (int d = 1; d <= a.nilpotency_class(); ++d) {
    double block = 0;
    for (int i = 0; i < a.dim(); ++i)
      if (a.depth(i) == d) block += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    if (block > 0) total += std::pow(std::sqrt(block), 1.0 / d);
  }
  return total;
}

double phi(const NilpotentAlgebra& a, const GroupPoint& x) { return phi(a, to_double(x)); }

namespace {

double vec_norm(const GroupPoint& x) {
  double s = 0;
  for (const auto& c : x) {
    double v = to_double(c);
    s += v * v;
  }
  return std::sqrt(s);
}

double least_squares_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0) return 0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

DistortionFit distortion_fit(const LatticeSpec& spec, int radius) {
  const NilpotentAlgebra& a = *spec.algebra;
  BfsBall ball = bfs_ball(spec, radius);
  DistortionFit fit;
  fit.s = a.nilpotency_class();
  fit.n_hom = a.homogeneous_dimension();

  std::vector<std::pair<int, double>> samples;  // (word distance, ||log g||)
  double max_norm = 0;
  for (const auto& [x, d] : ball.dist) {
    double nm = vec_norm(x);
    samples.emplace_back(d, nm);
    max_norm = std::max(max_norm, nm);
  }

  // Upper pair: over a C-grid take the minimal valid L (so the pair encloses
  // every sample), then keep the pair whose bound C + L d^s is tightest on
  // average over the sampled distances. Minimizing L alone would collapse to
  // the degenerate corner C = max ||x||, L = 0.
  const int grid_steps = 64;
  double mean_ds = 0;
  for (int r = 0; r <= radius; ++r) mean_ds += std::pow(static_cast<double>(r), fit.s);
  mean_ds /= (radius + 1);
  double best_L = 0, best_C = 0, best_obj = 0;
  for (int gi = 0; gi <= grid_steps; ++gi) {
    double C = max_norm * gi / grid_steps;
    double L = 0;
    for (auto [d, nm] : samples) {
      if (d == 0) continue;
      double need = (nm - C) / std::pow(static_cast<double>(d), fit.s);
      L = std::max(L, need);
    }
    double obj = C + L * mean_ds;
    if (gi == 0 || obj < best_obj) {
      best_obj = obj;
      best_L = L;
      best_C = C;
    }
  }
  fit.upper_C = best_C;
  fit.upper_L = std::max(best_L, 1e-12);

  // Lower pair: minimal valid L per C, then the tightest average bound
  // L (||x|| + C) over the samples.
  double mean_norm = 0;
  for (auto [d, nm] : samples) mean_norm += nm;
  mean_norm /= static_cast<double>(samples.size());
  double best_L2 = 0, best_C2 = 0, best_obj2 = 0;
  for (int gi = 1; gi <= grid_steps; ++gi) {
    double C = 0.25 * gi;
    double L = 0;
    for (auto [d, nm] : samples) L = std::max(L, d / (nm + C));
    double obj = L * (mean_norm + C);
    if (gi == 1 || obj < best_obj2) {
      best_obj2 = obj;
      best_L2 = L;
      best_C2 = C;
    }
  }
  fit.lower_C = best_C2;
  fit.lower_L = std::max(best_L2, 1e-12);

  fit.enclosing_valid = true;
  for (auto [d, nm] : samples) {
    if (nm > fit.upper_C + fit.upper_L * std::pow(static_cast<double>(d), fit.s) + 1e-9)
      fit.enclosing_valid = false;
    if (d / fit.lower_L - fit.lower_C > nm + 1e-9) fit.enclosing_valid = false;
  }

  // Ball growth exponent over the outer half of the radii.
  std::vector<std::pair<double, double>> loglog;
  auto sizes = ball.ball_sizes();
  for (int r = std::max(1, radius / 2); r <= radius; ++r)
    loglog.emplace_back(std::log(static_cast<double>(r)),
                        std::log(static_cast<double>(sizes[static_cast<std::size_t>(r)])));
  fit.growth_slope = least_squares_slope(loglog);

  // Distortion along the deepest grading block.
  std::vector<std::pair<double, double>> ray;
  for (const auto& [x, d] : ball.dist) {
    if (d == 0) continue;
    bool deep_only = true;
    bool nonzero = false;
    for (int i = 0; i < a.dim(); ++i) {
      if (x[static_cast<std::size_t>(i)] == 0) continue;
      nonzero = true;
      if (a.depth(i) != a.nilpotency_class()) deep_only = false;
    }
    if (deep_only && nonzero)
      ray.emplace_back(std::log(vec_norm(x)), std::log(static_cast<double>(d)));
  }
  if (ray.size() >= 4) fit.central_ray_exponent = least_squares_slope(ray);
  return fit;
}

}  // namespace nilfill

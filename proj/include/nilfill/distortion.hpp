#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nilfill/bch.hpp"

namespace nilfill {

struct LatticeSpec {
  const NilpotentAlgebra* algebra = nullptr;
  std::vector<GroupPoint> generators;  // symmetric set
  std::size_t ball_cap = 2000000;
};

// Default generating set: exp(+-e_i) for the depth-1 basis directions
// (a generating set modulo the derived subalgebra).
LatticeSpec default_lattice(const NilpotentAlgebra& a);

struct BfsBall {
  std::map<GroupPoint, int> dist;          // exact coordinates -> word distance
  std::vector<std::size_t> sphere_sizes;   // |S(0)|, ..., |S(radius)|
  Int denominator_lcm = 1;                 // measured integrality certificate

  std::vector<std::size_t> ball_sizes() const;  // cumulative
};

// Exact BFS over bch-products; deduplication is exact because keys are
// rationals in lowest terms. Throws BallTooLarge past spec.ball_cap.
BfsBall bfs_ball(const LatticeSpec& spec, int radius);

// Guivarc'h quasi-norm: sum over grading blocks of ||x_d||_2^(1/d).
double phi(const NilpotentAlgebra& a, const GroupPoint& x);
double phi(const NilpotentAlgebra& a, const std::vector<double>& x);

struct DistortionFit {
  int s = 1;            // nilpotency class used as the distortion exponent
  int n_hom = 0;        // homogeneous dimension
  double upper_C = 0, upper_L = 1;  // ||log g|| <= C + L d^s over all samples
  double lower_C = 0, lower_L = 1;  // d/L - C <= ||log g|| over all samples
  double growth_slope = 0;          // log |B(r)| vs log r, r in [radius/2, radius]
  std::optional<double> central_ray_exponent;  // slope of log d vs log ||log g||
                                               // on the deepest-block ray
  bool enclosing_valid = false;  // hard re-check of both inequalities
};

// Enclosing (not regression) fits of the two distortion inequalities plus the
// ball-growth exponent; every BFS sample must satisfy the stored pairs.
DistortionFit distortion_fit(const LatticeSpec& spec, int radius);

}  // namespace nilfill

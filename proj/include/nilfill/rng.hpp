#pragma once

#include <cstdint>

#include "nilfill/rational.hpp"

namespace nilfill {

// Deterministic generator with explicitly-specified output mapping, so that
// seeded runs are reproducible across standard libraries and platforms
// (std:: distributions are implementation-defined; we avoid them).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound)
  std::uint64_t next_below(std::uint64_t bound) {
    // Rejection-free modulo bias is negligible for our bounds; keep it simple
    // and deterministic.
    return next_u64() % bound;
  }

  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {  // inclusive range
    return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double next_unit() {  // [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Random rational p/q with |p| <= num_range and 1 <= q <= den_range.
  Rational next_rational(std::int64_t num_range, std::int64_t den_range) {
    std::int64_t p = next_int(-num_range, num_range);
    std::int64_t q = next_int(1, den_range);
    return Rational(p, q);
  }

  RatVec next_rational_vec(std::size_t n, std::int64_t num_range, std::int64_t den_range) {
    RatVec v(n);
    for (auto& x : v) x = next_rational(num_range, den_range);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace nilfill

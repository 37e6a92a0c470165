#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilfill/distortion.hpp"
#include "nilfill/filling.hpp"
#include "nilfill/json_io.hpp"
#include "nilfill/rng.hpp"

namespace nilfill {

struct ExperimentConfig {
  std::string algebra = "heisenberg(3)";  // catalog name or JSON file path
  std::string family = "dehn_loops";      // dehn_loops | cycles_d | distortion
  std::vector<long> scales = {1, 2, 4, 8};
  std::uint64_t seed = 1;
  int d = 2;  // cycle dimension for the cycles_d family
  QuadratureSpec quad;
  GridSpec grid;
  int jobs = 1;
  int bfs_radius = 12;
  std::optional<std::pair<double, double>> expected_slope;
  std::string out_dir;  // empty: do not write files
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);

NilpotentAlgebra load_algebra(const std::string& name_or_path);

// Scaled commutator rectangle [a^l, b^l] in the first two depth-1 generators,
// walked as a word path with exact bch steps and closed exactly (the mirror
// word [b^l, a^l] is appended when the commutator does not already close).
PLChain dehn_loop(const NilpotentAlgebra& a, long lambda);

// Boundary of a scaled simplicial (d+1)-ball placed by a random signed
// permutation and an exact group translation; deterministic per seed.
PLChain cycle_family(const NilpotentAlgebra& a, int d, long lambda, Rng& rng);

struct ExperimentRow {
  long scale = 0;
  double v_pulled = 0, v_euclid = 0, radius = 0;
  double fill_euclid = 0, fill_pulled = 0;
  double r_d = 0, r_d1 = 0, bound = 0;
  bool certificate_ok = false;
};

struct ExponentFit {
  double slope = 0, intercept = 0, residual = 0;
  int points_used = 0;
  double exponent_bound = 0;  // s * (2 deg R_1 + deg R_2) from this build's R_d degrees
  double optimal = 0;  // s + 1 (Dehn family reference value)
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  ExponentFit fit;
  bool all_certificates_ok = true;
  bool slope_in_window = true;  // vacuously true without a window
  std::optional<DistortionFit> distortion;
  std::string csv;
  Json report;
  std::string svg;
};

// Runs the configured family, writes results.csv / report.json / plot.svg
// into out_dir when set, and returns everything in memory. Deterministic for
// a fixed config and seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

double fit_slope_upper_half(const std::vector<std::pair<double, double>>& log_points,
                            double* intercept, double* residual, int* used);

std::string render_loglog_svg(const std::vector<std::pair<double, double>>& pts, double slope,
                              double intercept, const std::string& title);

}  // namespace nilfill

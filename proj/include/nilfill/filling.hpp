#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilfill/chains.hpp"
#include "nilfill/grid.hpp"
#include "nilfill/metric.hpp"

namespace nilfill {

// Per-connected-component record of the coning pipeline.
struct ComponentReport {
  double lambda = 0;            // mass fraction of the input cycle
  double input_mass_pulled = 0;
  double rho = 0;               // euclidean support radius after translation
  double cone_mass_euclid = 0;
  double cone_mass_pulled = 0;
  double r_d = 0;               // R_d(rho)
  double r_d1 = 0;              // R_{d+1}(rho)
  double certificate = 0;       // R_{d+1}(rho) * R_d(rho)^2
  double k_measured = 0;        // cone_mass_pulled / certificate
  GroupPoint translator;        // g with bch(g, .) moving the component through 0
};

struct FillReport {
  int d = 0;                      // cycle dimension
  double input_mass_pulled = 0;   // v
  double input_mass_euclid = 0;   // v-hat
  double radius = 0;              // euclidean support radius after translation
  double diameter = 0;
  int components = 0;
  std::vector<ComponentReport> per_component;
  double fill_mass_euclid = 0;
  double fill_mass_pulled = 0;
  double bound_value = 0;         // sum of per-component certificates
  double k_measured = 0;          // fill_mass_pulled / bound_value
  // Loop (Dehn) extras: the disk bound chain, with R_2 evaluated at v-hat.
  double r2_at_vhat = 0;
  double disk_bound = 0;          // R_2(v-hat) * euclidean cone area
  bool cauchy_schwarz_ok = false; // euclid area <= v-hat^2
  bool certificate_ok = false;    // pulled mass within the printed bound
};

// Euclidean-dilation cone: fills a k-cycle through the origin with the chain
// of simplices (0, v_0, ..., v_k). Exactly: boundary(C) == c,
// mass(C) <= mass(c) * diam(supp c), supp(C) in B(0, diam(supp c)).
// Throws NotACycle / OriginNotInSupport / DimensionUnsupported.
PLChain cone(const PLChain& c);

struct LoopFill {
  PLChain disk;           // translated back to the input frame
  PLChain refined_cycle;  // exact refinement of the input; boundary(disk) == it
  FillReport report;
};

// Dehn pipeline for a connected 1-cycle: translate through the origin, cone,
// measure both areas and the R_2 certificate, translate back vertexwise.
LoopFill fill_loop(const MetricContext& ctx, const PLChain& loop, const QuadratureSpec& quad);

struct CycleFillOptions {
  bool deform = false;
  GridSpec grid;
};

struct CycleFill {
  PLChain filling;
  PLChain refined_cycle;  // boundary(filling) == refined_cycle, exactly
  std::optional<GridDeformation> deformed;
  FillReport report;
};

// General cycle pipeline: per connected component translate through the
// origin, cone, translate back, sum; report per-component mass fractions and
// the certificate values. Optionally grid-deforms the filling (d + 1 must not
// exceed the grid's supported dimension and the boundary must be on-grid).
CycleFill fill_cycle(const MetricContext& ctx, const PLChain& c, const CycleFillOptions& opts,
                     const QuadratureSpec& quad);

}  // namespace nilfill

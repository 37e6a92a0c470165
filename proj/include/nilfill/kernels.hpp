#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nilfill/multipoly.hpp"

namespace nilfill::kernels {

// A sparse polynomial flattened to double coefficients for the float
// evaluation path (quadrature nodes, sampling sweeps). Term order is the
// canonical graded-lex order, so evaluation order is deterministic.
struct CompiledPoly {
  int nvars = 0;
  std::vector<double> coeffs;      // one per term
  std::vector<std::uint8_t> exps;  // nterms * nvars, term-major

  std::size_t term_count() const { return coeffs.size(); }
  static CompiledPoly compile(const MultiPoly& p);
};

enum class Backend { scalar, avx2 };

// Runtime-selected backend: AVX2 when compiled in and supported by the CPU
// (and not overridden by NILFILL_FORCE_SCALAR=1), scalar otherwise.
Backend active_backend();
void set_backend(Backend b);  // falls back to scalar if avx2 is unavailable
bool avx2_available();
const char* backend_name(Backend b);

// Evaluates p at npts points stored variable-major (SoA): x_soa[v*npts + i]
// is coordinate v of point i. All backends produce bitwise-identical output:
// the SIMD lanes vectorize across points, never across terms, and FMA
// contraction is disabled in the kernel translation units.
void eval_batch(const CompiledPoly& p, const double* x_soa, std::size_t npts, double* out);

void eval_batch_scalar(const CompiledPoly& p, const double* x_soa, std::size_t npts,
                       double* out);

}  // namespace nilfill::kernels

#include "nilfill/kernels.hpp"

namespace nilfill::kernels {

CompiledPoly CompiledPoly::compile(const MultiPoly& p) {
  CompiledPoly c;
  c.nvars = p.nvars();
  for (const auto& [e, coeff] : p.terms()) {
    c.coeffs.push_back(to_double(coeff));
    for (int v = 0; v < c.nvars; ++v) c.exps.push_back(static_cast<std::uint8_t>(e[v]));
  }
  return c;
}

// Reference kernel. The SIMD variants replicate this exact operation order
// per point, which is what makes the backends bitwise comparable.
void eval_batch_scalar(const CompiledPoly& p, const double* x_soa, std::size_t npts,
                       double* out) {
  const std::size_t nt = p.term_count();
  const std::size_t nv = static_cast<std::size_t>(p.nvars);
  for (std::size_t i = 0; i < npts; ++i) {
    double acc = 0.0;
    const std::uint8_t* e = p.exps.data();
    for (std::size_t t = 0; t < nt; ++t, e += nv) {
      double m = p.coeffs[t];
      for (std::size_t v = 0; v < nv; ++v) {
        const double xv = x_soa[v * npts + i];
        for (std::uint8_t k = 0; k < e[v]; ++k) m *= xv;
      }
      acc += m;
    }
    out[i] = acc;
  }
}

}  // namespace nilfill::kernels

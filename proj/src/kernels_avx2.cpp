#include "nilfill/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace nilfill::kernels {

// Vectorizes across points (4 doubles per lane), keeping the per-point
// operation order identical to the scalar kernel: multiply-by-coordinate
// exponent times, then accumulate term by term. No FMA, so results match
// the scalar backend bit for bit.
void eval_batch_avx2(const CompiledPoly& p, const double* x_soa, std::size_t npts,
                     double* out) {
  const std::size_t nt = p.term_count();
  const std::size_t nv = static_cast<std::size_t>(p.nvars);

  std::size_t i = 0;
  for (; i + 4 <= npts; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    const std::uint8_t* e = p.exps.data();
    for (std::size_t t = 0; t < nt; ++t, e += nv) {
      __m256d m = _mm256_set1_pd(p.coeffs[t]);
      for (std::size_t v = 0; v < nv; ++v) {
        if (e[v] == 0) continue;
        const __m256d xv = _mm256_loadu_pd(x_soa + v * npts + i);
        for (std::uint8_t k = 0; k < e[v]; ++k) m = _mm256_mul_pd(m, xv);
      }
      acc = _mm256_add_pd(acc, m);
    }
    _mm256_storeu_pd(out + i, acc);
  }

  // Tail points go through the same per-point recurrence.
  for (; i < npts; ++i) {
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

#endif  // x86_64

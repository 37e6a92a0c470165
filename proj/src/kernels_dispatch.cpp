#include <atomic>
#include <cstdlib>

#include "nilfill/kernels.hpp"

#if defined(NILFILL_BUILD_AVX2)
namespace nilfill::kernels {
void eval_batch_avx2(const CompiledPoly& p, const double* x_soa, std::size_t npts, double* out);
}
#endif

namespace nilfill::kernels {

bool avx2_available() {
#if defined(NILFILL_BUILD_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Backend detect_backend() {
  if (const char* force = std::getenv("NILFILL_FORCE_SCALAR");
      force && force[0] == '1') {
    return Backend::scalar;
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_backend()};
  return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void eval_batch(const CompiledPoly& p, const double* x_soa, std::size_t npts, double* out) {
#if defined(NILFILL_BUILD_AVX2)
  if (active_backend() == Backend::avx2) {
    eval_batch_avx2(p, x_soa, npts, out);
    return;
  }
#endif
  eval_batch_scalar(p, x_soa, npts, out);
}

}  // namespace nilfill::kernels

#include "qms/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qms::kernels {

namespace {

struct Vtable {
  void (*scale_real)(cplx*, std::size_t, double);
  void (*scale)(cplx*, std::size_t, cplx);
  void (*hadamard)(cplx*, const cplx*, std::size_t);
  void (*axpy)(cplx*, const cplx*, std::size_t, cplx);
  Backend backend;
};

constexpr Vtable kScalar{scalar::scale_real, scalar::scale, scalar::hadamard,
                         scalar::axpy, Backend::Scalar};

#ifdef QMSLAB_HAVE_AVX2
constexpr Vtable kAvx2{avx2::scale_real, avx2::scale, avx2::hadamard,
                       avx2::axpy, Backend::Avx2};
#endif
#ifdef QMSLAB_HAVE_NEON
constexpr Vtable kNeon{neon::scale_real, neon::scale, neon::hadamard,
                       neon::axpy, Backend::Neon};
#endif

const Vtable& select() {
  static const Vtable* chosen = [] {
    const char* force = std::getenv("QMSLAB_SIMD");
    if (force != nullptr) {
      if (std::strcmp(force, "scalar") == 0) return &kScalar;
#ifdef QMSLAB_HAVE_AVX2
      if (std::strcmp(force, "avx2") == 0) return &kAvx2;
#endif
#ifdef QMSLAB_HAVE_NEON
      if (std::strcmp(force, "neon") == 0) return &kNeon;
#endif
      return &kScalar; // unknown or unavailable name falls back
    }
#ifdef QMSLAB_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
#ifdef QMSLAB_HAVE_NEON
    return &kNeon; // mandatory on aarch64
#endif
    return &kScalar;
  }();
  return *chosen;
}

} // namespace

Backend active() { return select().backend; }

const char* backend_name(Backend b) {
  switch (b) {
  case Backend::Scalar: return "scalar";
  case Backend::Avx2: return "avx2";
  case Backend::Neon: return "neon";
  }
  return "unknown";
}

void scale_real(cplx* x, std::size_t n, double a) { select().scale_real(x, n, a); }
void scale(cplx* x, std::size_t n, cplx a) { select().scale(x, n, a); }
void hadamard(cplx* x, const cplx* y, std::size_t n) { select().hadamard(x, y, n); }
void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) { select().axpy(y, x, n, a); }

} // namespace qms::kernels

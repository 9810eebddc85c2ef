#pragma once

// Element-wise complex kernels used in the channel inner loops.
//
// Every kernel has a scalar reference implementation (namespace
// kernels::scalar) and, where the target supports it, a SIMD variant
// (AVX2 on x86-64, NEON on aarch64). The active variant is picked once at
// startup from CPU capabilities; QMSLAB_SIMD=scalar|avx2|neon overrides the
// choice. SIMD variants are written to perform the same floating-point
// operations in the same order as the scalar reference so that results
// match bit for bit.

#include <complex>
#include <cstddef>

namespace qms::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

/// Backend selected at startup (or forced via QMSLAB_SIMD).
Backend active();
const char* backend_name(Backend b);

/// x[i] *= a for real a.
void scale_real(cplx* x, std::size_t n, double a);

/// x[i] *= a for complex a.
void scale(cplx* x, std::size_t n, cplx a);

/// x[i] *= y[i] (element-wise complex product).
void hadamard(cplx* x, const cplx* y, std::size_t n);

/// y[i] += a * x[i].
void axpy(cplx* y, const cplx* x, std::size_t n, cplx a);

namespace scalar {
void scale_real(cplx* x, std::size_t n, double a);
void scale(cplx* x, std::size_t n, cplx a);
void hadamard(cplx* x, const cplx* y, std::size_t n);
void axpy(cplx* y, const cplx* x, std::size_t n, cplx a);
} // namespace scalar

#ifdef QMSLAB_HAVE_AVX2
namespace avx2 {
void scale_real(cplx* x, std::size_t n, double a);
void scale(cplx* x, std::size_t n, cplx a);
void hadamard(cplx* x, const cplx* y, std::size_t n);
void axpy(cplx* y, const cplx* x, std::size_t n, cplx a);
} // namespace avx2
#endif

#ifdef QMSLAB_HAVE_NEON
namespace neon {
void scale_real(cplx* x, std::size_t n, double a);
void scale(cplx* x, std::size_t n, cplx a);
void hadamard(cplx* x, const cplx* y, std::size_t n);
void axpy(cplx* y, const cplx* x, std::size_t n, cplx a);
} // namespace neon
#endif

} // namespace qms::kernels

#include "qms/kernels.hpp"

#ifdef QMSLAB_HAVE_AVX2

#include <immintrin.h>

// Complex doubles are interleaved (re, im); a __m256d holds two of them.
// Products use mul + addsub (no FMA) so lane arithmetic matches the scalar
// reference exactly.

namespace qms::kernels::avx2 {

void scale_real(cplx* x, std::size_t n, double a) {
  auto* d = reinterpret_cast<double*>(x);
  const std::size_t m = 2 * n;
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), av));
  }
  for (; i < m; ++i) d[i] *= a;
}

void scale(cplx* x, std::size_t n, cplx a) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* d = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    const __m256d vs = _mm256_permute_pd(v, 0b0101); // swap re/im lanes
    // (re*ar - im*ai, im*ar + re*ai)
    const __m256d r = _mm256_addsub_pd(_mm256_mul_pd(v, ar),
                                       _mm256_mul_pd(vs, ai));
    _mm256_storeu_pd(d + 2 * i, r);
  }
  if (i < n) scalar::scale(x + i, n - i, a);
}

void hadamard(cplx* x, const cplx* y, std::size_t n) {
  auto* dx = reinterpret_cast<double*>(x);
  const auto* dy = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(dx + 2 * i);
    const __m256d w = _mm256_loadu_pd(dy + 2 * i);
    const __m256d wr = _mm256_permute_pd(w, 0b0000); // (yr, yr)
    const __m256d wi = _mm256_permute_pd(w, 0b1111); // (yi, yi)
    const __m256d vs = _mm256_permute_pd(v, 0b0101);
    const __m256d r = _mm256_addsub_pd(_mm256_mul_pd(v, wr),
                                       _mm256_mul_pd(vs, wi));
    _mm256_storeu_pd(dx + 2 * i, r);
  }
  if (i < n) scalar::hadamard(x + i, y + i, n - i);
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* dy = reinterpret_cast<double*>(y);
  const auto* dx = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(dx + 2 * i);
    const __m256d vs = _mm256_permute_pd(v, 0b0101);
    const __m256d p = _mm256_addsub_pd(_mm256_mul_pd(v, ar),
                                       _mm256_mul_pd(vs, ai));
    const __m256d r = _mm256_add_pd(_mm256_loadu_pd(dy + 2 * i), p);
    _mm256_storeu_pd(dy + 2 * i, r);
  }
  if (i < n) scalar::axpy(y + i, x + i, n - i, a);
}

} // namespace qms::kernels::avx2

#endif // QMSLAB_HAVE_AVX2

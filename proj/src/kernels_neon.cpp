#include "qms/kernels.hpp"

#ifdef QMSLAB_HAVE_NEON

#include <arm_neon.h>

// One float64x2_t holds a single complex double (re, im).

namespace qms::kernels::neon {

void scale_real(cplx* x, std::size_t n, double a) {
  auto* d = reinterpret_cast<double*>(x);
  const float64x2_t av = vdupq_n_f64(a);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(d + 2 * i, vmulq_f64(vld1q_f64(d + 2 * i), av));
  }
}

void scale(cplx* x, std::size_t n, cplx a) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double ai_pm[2] = {-a.imag(), a.imag()};
  const float64x2_t ai = vld1q_f64(ai_pm);
  auto* d = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(d + 2 * i);
    const float64x2_t vs = vextq_f64(v, v, 1); // (im, re)
    // (re*ar - im*ai, im*ar + re*ai)
    vst1q_f64(d + 2 * i, vaddq_f64(vmulq_f64(v, ar), vmulq_f64(vs, ai)));
  }
}

void hadamard(cplx* x, const cplx* y, std::size_t n) {
  auto* dx = reinterpret_cast<double*>(x);
  const auto* dy = reinterpret_cast<const double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(dx + 2 * i);
    const float64x2_t w = vld1q_f64(dy + 2 * i);
    const float64x2_t wr = vdupq_laneq_f64(w, 0);
    const double wi_pm[2] = {-vgetq_lane_f64(w, 1), vgetq_lane_f64(w, 1)};
    const float64x2_t wi = vld1q_f64(wi_pm);
    const float64x2_t vs = vextq_f64(v, v, 1);
    vst1q_f64(dx + 2 * i, vaddq_f64(vmulq_f64(v, wr), vmulq_f64(vs, wi)));
  }
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  const double ai_pm[2] = {-a.imag(), a.imag()};
  const float64x2_t ai = vld1q_f64(ai_pm);
  auto* dy = reinterpret_cast<double*>(y);
  const auto* dx = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(dx + 2 * i);
    const float64x2_t vs = vextq_f64(v, v, 1);
    const float64x2_t p = vaddq_f64(vmulq_f64(v, ar), vmulq_f64(vs, ai));
    vst1q_f64(dy + 2 * i, vaddq_f64(vld1q_f64(dy + 2 * i), p));
  }
}

} // namespace qms::kernels::neon

#endif // QMSLAB_HAVE_NEON

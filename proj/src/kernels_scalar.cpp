#include "qms/kernels.hpp"

namespace qms::kernels::scalar {

void scale_real(cplx* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = cplx(x[i].real() * a, x[i].imag() * a);
  }
}

void scale(cplx* x, std::size_t n, cplx a) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cplx(xr * ar - xi * ai, xi * ar + xr * ai);
  }
}

void hadamard(cplx* x, const cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    x[i] = cplx(xr * yr - xi * yi, xi * yr + xr * yi);
  }
}

void axpy(cplx* y, const cplx* x, std::size_t n, cplx a) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cplx(y[i].real() + (xr * ar - xi * ai),
                y[i].imag() + (xi * ar + xr * ai));
  }
}

} // namespace qms::kernels::scalar

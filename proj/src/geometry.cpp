#include "qms/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qms {

namespace {

// Fidelity in 80-bit precision: acos amplifies any error in f by 1/sin(D),
// so double-precision eigensolves leave ~1e-8 of noise on near-identical
// states. Extended precision keeps the Bures angle trustworthy to ~1e-10.
using LMatrix =
    Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

// Eigenvalues below this (inputs have unit trace) are solver round-off of a
// true zero. sqrt turns each such residue into ~3e-10 of spurious rank, and
// their sum would bias the fidelity of rank-deficient states by ~1e-9.
constexpr long double kSqrtCutoff = 1e-17L;

LMatrix hermitian_sqrt_l(const LMatrix& m) {
  Eigen::SelfAdjointEigenSolver<LMatrix> es(m);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    ev(i) = ev(i) < kSqrtCutoff ? 0.0L : std::sqrt(ev(i));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionError("fidelity: dimension mismatch");
  // identical inputs: return exactly 1 rather than eigensolver round-off,
  // which acos would amplify to ~1e-7 of spurious Bures distance
  if (rho.matrix() == sigma.matrix()) return 1.0;
  const LMatrix lr = rho.matrix().cast<std::complex<long double>>();
  const LMatrix ls = sigma.matrix().cast<std::complex<long double>>();
  const LMatrix sr = hermitian_sqrt_l(lr);
  LMatrix a = sr * ls * sr;
  a = 0.5L * (a + a.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<LMatrix> es(a);
  long double f = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) >= kSqrtCutoff) f += std::sqrt(es.eigenvalues()(i));
  return std::clamp(double(f), 0.0, 1.0);
}

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  // arccos(f) has an absolute noise floor of ~sqrt(eps) for tiny angles.
  // Nearly identical states instead use the local Bures metric
  //   D^2 ~ (1/2) sum_ij |delta_ij|^2 / (l_i + l_j)
  // in the midpoint eigenbasis, which is cancellation-free: delta is exact
  // and the relative error is O(|delta|).
  const Matrix delta = sigma.matrix() - rho.matrix();
  if (delta.cwiseAbs().maxCoeff() < 1e-7) {
    if (delta.isZero(0.0)) return 0.0;
    const DensityMatrix mid =
        DensityMatrix::fromMatrix(0.5 * (rho.matrix() + sigma.matrix()));
    const EigenDecomposition d = EigenDecomposition::of(mid);
    const Matrix dd = d.eigenvectors.adjoint() * delta * d.eigenvectors;
    double sq = 0;
    for (Eigen::Index i = 0; i < dd.rows(); ++i)
      for (Eigen::Index j = 0; j < dd.cols(); ++j) {
        const double denom = d.eigenvalues(i) + d.eigenvalues(j);
        if (denom > kSldCutoff) sq += std::norm(dd(i, j)) / denom;
      }
    return std::sqrt(0.5 * sq);
  }
  return std::acos(fidelity(rho, sigma));
}

QfiResult qfi_pure(const PureState& psi, const HamiltonianSpec& g,
                   double scale) {
  return {4.0 * scale * scale * variance(psi, g),
          QfiResult::Method::PureVariance, 0.0};
}

QfiResult qfi_sld(const DensityMatrix& rho, const Matrix& drho) {
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim())
    throw DimensionError("qfi_sld: dimension mismatch");
  if ((drho - drho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw ValidationError("qfi_sld: drho must be Hermitian");
  const EigenDecomposition d = EigenDecomposition::of(rho);
  const Matrix dr = d.eigenvectors.adjoint() * drho * d.eigenvectors;
  const int n = rho.dim();
  double f = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double denom = d.eigenvalues(i) + d.eigenvalues(j);
      if (denom > kSldCutoff) f += std::norm(dr(i, j)) / denom;
    }
  return {2.0 * f, QfiResult::Method::SldEigen, kSldCutoff};
}

QfiResult qfi_unitary_generator(const DensityMatrix& rho,
                                const HamiltonianSpec& g, double scale) {
  if (g.dim() != rho.dim())
    throw DimensionError("qfi_unitary_generator: dimension mismatch");
  const Matrix drho =
      cplx(0, -scale) *
      (g.toMatrix() * rho.matrix() - rho.matrix() * g.toMatrix());
  return qfi_sld(rho, drho);
}

double convex_roof_upper_bound(const DensityMatrix& rho,
                               const HamiltonianSpec& g, double scale) {
  if (g.dim() != rho.dim())
    throw DimensionError("convex_roof_upper_bound: dimension mismatch");
  const EigenDecomposition d = EigenDecomposition::of(rho);
  double bound = 0;
  for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
    const double p = d.eigenvalues(i);
    if (p <= kSldCutoff) continue;
    Vector v = d.eigenvectors.col(i);
    v.normalize();
    bound += p * 4.0 * scale * scale * variance(PureState(v), g);
  }
  return bound;
}

double qfi_bures_consistency(const StateFamily& family, double at,
                             double eps) {
  const DensityMatrix rho = family(at);
  const DensityMatrix rho_eps = family(at + eps);
  const double slope = 2.0 * bures_angle(rho, rho_eps) / eps;

  // derivative by central difference; symmetrize to kill the tiny
  // anti-Hermitian numerical residue
  const double h = 1e-6;
  Matrix drho = (family(at + h).matrix() - family(at - h).matrix()) / (2 * h);
  drho = 0.5 * (drho + drho.adjoint());
  const double f = qfi_sld(rho, drho).value;
  const double sf = std::sqrt(std::max(0.0, f));

  if (sf < 1e-9 && slope < 1e-9) return 0.0; // constant family
  if (sf < 1e-9) return slope; // degenerate: report absolute slope
  return std::abs(slope - sf) / sf;
}

} // namespace qms

#pragma once

// Shared helpers and independent oracles for the test suites. Everything
// here is deliberately naive: oracles must not share a code path with the
// implementation they check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qms/geometry.hpp"
#include "qms/random.hpp"
#include "qms/states.hpp"

namespace qms::test {

/// Brute-force Grover by direct state-vector arithmetic: phase oracle on
/// amplitude x, then inversion about the mean. Returns success probability
/// after `queries` rounds.
inline double grover_state_vector(int n, int x_one_based, int queries,
                                  double omega_tau = M_PI) {
  std::vector<cplx> amp(std::size_t(n), cplx(1.0 / std::sqrt(double(n)), 0));
  const cplx phase = std::exp(cplx(0, -omega_tau));
  for (int q = 0; q < queries; ++q) {
    amp[std::size_t(x_one_based - 1)] *= phase;
    cplx mean = 0;
    for (const cplx& a : amp) mean += a;
    mean /= double(n);
    for (cplx& a : amp) a = 2.0 * mean - a;
  }
  return std::norm(amp[std::size_t(x_one_based - 1)]);
}

/// Finite-difference QFI through the fidelity: for a family rho(theta),
/// D(rho, rho_eps) ~ sqrt(F)/2 * eps, so F ~ (2 D / eps)^2. Richardson
/// extrapolation over eps and eps/2 removes the leading error term.
inline double qfi_finite_difference(const StateFamily& family, double at,
                                    double eps = 1e-4) {
  auto estimate = [&](double e) {
    const double d = bures_angle(family(at), family(at + e));
    return 4.0 * d * d / (e * e);
  };
  const double f1 = estimate(eps);
  const double f2 = estimate(eps / 2);
  return (4.0 * f2 - f1) / 3.0;
}

/// Random unitary from the QR decomposition of a Ginibre matrix.
inline Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  // fix the phase convention so Q is Haar-distributed
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Random CPTP channel: k Kraus operators cut from a random unitary on a
/// dim*k space.
inline std::vector<Matrix> random_kraus(int dim, int k, std::mt19937_64& rng) {
  const Matrix u = random_unitary(dim * k, rng);
  std::vector<Matrix> ops;
  for (int b = 0; b < k; ++b)
    ops.push_back(u.block(b * dim, 0, dim, dim));
  return ops;
}

} // namespace qms::test

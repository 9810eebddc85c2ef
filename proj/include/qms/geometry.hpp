#pragma once

#include <functional>

#include "qms/states.hpp"

namespace qms {

struct QfiResult {
  enum class Method { PureVariance, SldEigen, FiniteDifferenceFidelity };
  double value = 0;
  Method method = Method::SldEigen;
  double spectrum_cutoff_used = 0;
};

/// Terms with eigenvalue sum below this are dropped in the SLD formula.
inline constexpr double kSldCutoff = 1e-12;

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0,1].
/// For pure states this is |<psi|phi>|.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Angular Bures distance arccos(fidelity), in [0, pi/2].
double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Pure-state QFI 4*scale^2*Var(G).
QfiResult qfi_pure(const PureState& psi, const HamiltonianSpec& g,
                   double scale);

/// Mixed-state QFI from the state and its parameter derivative:
///   F = 2 sum_{i,j: l_i+l_j > cutoff} |<e_i|drho|e_j>|^2 / (l_i + l_j).
QfiResult qfi_sld(const DensityMatrix& rho, const Matrix& drho);

/// QFI of the unitary family rho(theta) = e^{-i*scale*theta*G} rho ...,
/// i.e. qfi_sld with drho = -i*scale*[G, rho].
QfiResult qfi_unitary_generator(const DensityMatrix& rho,
                                const HamiltonianSpec& g, double scale);

/// Eigendecomposition convex-roof upper bound:
///   sum_i lambda_i * 4*scale^2 * Var(G)_{|e_i>}  >=  SLD QFI.
double convex_roof_upper_bound(const DensityMatrix& rho,
                               const HamiltonianSpec& g, double scale);

/// One-parameter state family for consistency checks.
using StateFamily = std::function<DensityMatrix(double)>;

/// Relative error of the local relation 2*D(rho_t, rho_{t+eps})/eps vs
/// sqrt(F) at parameter `at`. Returns 0 for (numerically) constant families.
double qfi_bures_consistency(const StateFamily& family, double at,
                             double eps = 1e-4);

} // namespace qms

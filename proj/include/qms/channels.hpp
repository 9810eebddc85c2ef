#pragma once

#include <utility>
#include <vector>

#include "qms/scheme_config.hpp"
#include "qms/states.hpp"

namespace qms {

/// Uniform off-diagonal damping on one tensor factor: matrix elements whose
/// subindex on `acts_on` differs between row and column are multiplied by
/// eta = exp(-gamma*tau); all other elements (in particular every diagonal
/// entry) are untouched. Equals the convex form eta*rho + (1-eta)*P(rho)
/// with P the block-diagonal pinching, hence CPTP.
class DephasingChannel {
public:
  DephasingChannel(std::vector<int> dims, int acts_on, double gamma,
                   double tau);

  double eta() const { return eta_; }
  int total_dim() const { return total_dim_; }

  DensityMatrix apply(const DensityMatrix& rho) const;
  /// Same linear map on an arbitrary matrix (derivative propagation).
  void applyInPlace(Matrix& m) const;

private:
  std::vector<int> dims_;
  int acts_on_;
  double gamma_, tau_, eta_;
  int total_dim_;
  std::vector<int> subindex_; // acts_on subindex per full index
};

/// U = exp(-i*omega*tau*|x><x|) on the sensing factor, identity elsewhere.
/// Diagonal in the computational basis.
class OracleUnitary {
public:
  OracleUnitary(std::vector<int> dims, int acts_on, int label_one_based,
                double omega, double tau);

  int total_dim() const { return total_dim_; }
  int label() const { return label_; }
  /// Diagonal entries of U.
  const Vector& phases() const { return phases_; }
  Matrix toMatrix() const { return Matrix(phases_.asDiagonal()); }

  DensityMatrix apply(const DensityMatrix& rho) const;
  /// U m U^dagger on an arbitrary matrix, in place.
  void conjugateInPlace(Matrix& m) const;

private:
  std::vector<int> dims_;
  int acts_on_, label_;
  double omega_, tau_;
  int total_dim_;
  Vector phases_;
};

/// Generic CPTP map given by Kraus operators (property-test plumbing).
class KrausChannel {
public:
  explicit KrausChannel(std::vector<Matrix> operators);
  DensityMatrix apply(const DensityMatrix& rho) const;
  const std::vector<Matrix>& operators() const { return ops_; }

private:
  std::vector<Matrix> ops_;
};

/// Convenience constructors bound to a SchemeConfig (sensing slot 0).
DephasingChannel sensing_dephasing(const SchemeConfig& cfg);
OracleUnitary sensing_oracle(int label_one_based, const SchemeConfig& cfg);

/// One interrogation step Lambda_tau(U^x rho U^x†) without the intertwiner.
DensityMatrix interrogation_step(int label_one_based, const SchemeConfig& cfg,
                                 const DensityMatrix& rho);

/// Full step including the intertwining unitary V (pass nullptr for
/// identity), propagating the exact omega-derivative alongside the state:
///   d(U rho U†)/domega = -i*tau*[H^x, U rho U†] + U (drho) U†,
/// then linearity of the dephasing map and of V.
std::pair<DensityMatrix, Matrix>
step_with_derivative(int label_one_based, const SchemeConfig& cfg,
                     const DensityMatrix& rho, const Matrix& drho,
                     const Matrix* v = nullptr);

/// [P_x (x) I, m] for the sensing projector P_x = |x><x|.
Matrix sensing_projector_commutator(int label_one_based,
                                    const std::vector<int>& dims,
                                    const Matrix& m);

} // namespace qms

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qms/errors.hpp"

namespace qms {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Default cap on the total Hilbert-space dimension (N<=8 with up to two
/// parallel copies fits).
inline constexpr int kDefaultDimCap = 64;

/// Unit-norm complex state vector.
class PureState {
public:
  explicit PureState(Vector amplitudes);

  static PureState basis(int dim, int index_zero_based);
  /// (1/sqrt(N)) sum_x |x>
  static PureState uniform(int dim);
  /// |+>^{tensor M}, dim 2^M
  static PureState plus(int n_qubits);
  /// (|0...0> + |1...1>)/sqrt(2), dim 2^M
  static PureState ghz(int n_qubits);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }

private:
  Vector amps_;
};

/// Hermitian, positive semidefinite, trace-one matrix.
///
/// Construction validates all three invariants: Hermiticity to 1e-10,
/// eigenvalues >= -1e-10 (small negatives are clamped to zero and the
/// spectrum renormalized), |trace - 1| <= 1e-10.
class DensityMatrix {
public:
  static DensityMatrix fromMatrix(Matrix m);
  static DensityMatrix fromPure(const PureState& psi);
  static DensityMatrix maximallyMixed(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  double purity() const { return (mat_ * mat_).trace().real(); }

private:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// Generating Hamiltonians used by the scheme.
class HamiltonianSpec {
public:
  enum class Kind { Projector, ExcitationNumber, Custom };

  /// |x><x| on an N-dimensional space; x is the paper's 1-based label.
  static HamiltonianSpec projector(int dim, int label_one_based);
  /// Diagonal operator counting set bits of the basis index, dim 2^M.
  static HamiltonianSpec excitationNumber(int n_qubits);
  static HamiltonianSpec custom(Matrix hermitian);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int label() const { return label_; }
  const Matrix& toMatrix() const { return mat_; }

private:
  HamiltonianSpec(Kind k, int dim, int label, Matrix m)
      : kind_(k), dim_(dim), label_(label), mat_(std::move(m)) {}
  Kind kind_;
  int dim_;
  int label_ = 0; // 1-based, Projector only
  Matrix mat_;
};

/// Spectral decomposition of a Hermitian matrix, eigenvalues descending,
/// eigenvectors orthonormal columns.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;

  static EigenDecomposition of(const Matrix& hermitian);
  static EigenDecomposition of(const DensityMatrix& rho);
};

/// Kronecker product of two density matrices; errors if the product
/// dimension exceeds the cap.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     int dim_cap = kDefaultDimCap);
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace out every subsystem not listed in `keep`. `dims` are the factor
/// dimensions in tensor order (leftmost factor = slowest index).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep,
                            const std::vector<int>& dims);
Matrix partial_trace_matrix(const Matrix& m, const std::vector<int>& keep,
                            const std::vector<int>& dims);

/// Tr(rho H); imaginary residue up to 1e-10 is discarded.
double expectation(const DensityMatrix& rho, const HamiltonianSpec& h);

/// <H^2> - <H>^2 on a pure state, clamped at zero.
double variance(const PureState& psi, const HamiltonianSpec& h);

} // namespace qms

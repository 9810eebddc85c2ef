#include "qms/states.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace qms {

namespace {
constexpr double kHermTol = 1e-10;
constexpr double kEigTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNormTol = 1e-12;
} // namespace

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw DimensionError("PureState: empty vector");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol)
    throw ValidationError("PureState: |norm^2 - 1| = " +
                          std::to_string(std::abs(norm2 - 1.0)) +
                          " exceeds 1e-12");
}

PureState PureState::basis(int dim, int index_zero_based) {
  if (dim <= 0 || index_zero_based < 0 || index_zero_based >= dim)
    throw DimensionError("PureState::basis: index out of range");
  Vector v = Vector::Zero(dim);
  v(index_zero_based) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::uniform(int dim) {
  if (dim <= 0) throw DimensionError("PureState::uniform: dim must be positive");
  return PureState(Vector::Constant(dim, cplx(1.0 / std::sqrt(double(dim)), 0)));
}

PureState PureState::plus(int n_qubits) {
  if (n_qubits <= 0) throw DimensionError("PureState::plus: need >= 1 qubit");
  return uniform(1 << n_qubits);
}

PureState PureState::ghz(int n_qubits) {
  if (n_qubits <= 0) throw DimensionError("PureState::ghz: need >= 1 qubit");
  const int dim = 1 << n_qubits;
  Vector v = Vector::Zero(dim);
  v(0) = v(dim - 1) = cplx(1.0 / std::sqrt(2.0), 0);
  return PureState(std::move(v));
}

DensityMatrix DensityMatrix::fromMatrix(Matrix m) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw DimensionError("DensityMatrix: matrix must be square and non-empty");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol)
    throw ValidationError("DensityMatrix: Hermiticity violation " +
                          std::to_string(herm));
  const double tr_err = std::abs(m.trace() - cplx(1.0, 0));
  if (tr_err > kTraceTol)
    throw ValidationError("DensityMatrix: |trace - 1| = " +
                          std::to_string(tr_err));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kEigTol)
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(min_eig));
  if (min_eig < 0) {
    // clamp numerical-noise negatives and renormalize
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    m = 0.5 * (m + m.adjoint());
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::fromPure(const PureState& psi) {
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  const double tr = m.trace().real();
  m /= tr; // norm is within 1e-12 of one; make trace exact
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximallyMixed(int dim) {
  if (dim <= 0) throw DimensionError("maximallyMixed: dim must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / double(dim));
}

HamiltonianSpec HamiltonianSpec::projector(int dim, int label_one_based) {
  if (dim <= 0 || label_one_based < 1 || label_one_based > dim)
    throw DimensionError("HamiltonianSpec::projector: label out of 1..N");
  Matrix m = Matrix::Zero(dim, dim);
  m(label_one_based - 1, label_one_based - 1) = 1.0;
  return HamiltonianSpec(Kind::Projector, dim, label_one_based, std::move(m));
}

HamiltonianSpec HamiltonianSpec::excitationNumber(int n_qubits) {
  if (n_qubits <= 0)
    throw DimensionError("HamiltonianSpec::excitationNumber: need >= 1 qubit");
  const int dim = 1 << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    m(i, i) = double(std::popcount(unsigned(i)));
  return HamiltonianSpec(Kind::ExcitationNumber, dim, 0, std::move(m));
}

HamiltonianSpec HamiltonianSpec::custom(Matrix hermitian) {
  if (hermitian.rows() == 0 || hermitian.rows() != hermitian.cols())
    throw DimensionError("HamiltonianSpec::custom: square matrix required");
  if ((hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw ValidationError("HamiltonianSpec::custom: matrix not Hermitian");
  const int dim = static_cast<int>(hermitian.rows());
  return HamiltonianSpec(Kind::Custom, dim, 0, std::move(hermitian));
}

EigenDecomposition EigenDecomposition::of(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint()));
  const int n = static_cast<int>(hermitian.rows());
  // SelfAdjointEigenSolver returns ascending order; flip to descending
  EigenDecomposition d;
  d.eigenvalues = es.eigenvalues().reverse();
  d.eigenvectors = es.eigenvectors().rowwise().reverse();
  (void)n;
  return d;
}

EigenDecomposition EigenDecomposition::of(const DensityMatrix& rho) {
  return of(rho.matrix());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     int dim_cap) {
  const long prod = long(a.dim()) * long(b.dim());
  if (prod > dim_cap)
    throw DimensionError("tensor: product dimension " + std::to_string(prod) +
                         " exceeds cap " + std::to_string(dim_cap));
  return DensityMatrix::fromMatrix(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace_matrix(const Matrix& m, const std::vector<int>& keep,
                            const std::vector<int>& dims) {
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("partial_trace: nonpositive factor dim");
    total *= d;
  }
  if (total != m.rows() || m.rows() != m.cols())
    throw DimensionError("partial_trace: dims inconsistent with matrix size");
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(k, false);
  for (int s : keep) {
    if (s < 0 || s >= k) throw DimensionError("partial_trace: bad keep index");
    kept[s] = true;
  }
  long dim_keep = 1, dim_drop = 1;
  for (int s = 0; s < k; ++s) (kept[s] ? dim_keep : dim_drop) *= dims[s];

  // strides of each factor in the full index (leftmost factor slowest)
  std::vector<long> stride(k, 1);
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  // map (kept multi-index, dropped multi-index) -> full index
  auto full_index = [&](long ik, long id) {
    long idx = 0;
    long rk = ik, rd = id;
    for (int s = k - 1; s >= 0; --s) {
      const long d = dims[s];
      long comp;
      if (kept[s]) { comp = rk % d; rk /= d; }
      else { comp = rd % d; rd /= d; }
      idx += comp * stride[s];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (long i = 0; i < dim_keep; ++i)
    for (long j = 0; j < dim_keep; ++j) {
      cplx acc = 0;
      for (long t = 0; t < dim_drop; ++t)
        acc += m(full_index(i, t), full_index(j, t));
      out(i, j) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep,
                            const std::vector<int>& dims) {
  return DensityMatrix::fromMatrix(
      partial_trace_matrix(rho.matrix(), keep, dims));
}

double expectation(const DensityMatrix& rho, const HamiltonianSpec& h) {
  if (rho.dim() != h.dim())
    throw DimensionError("expectation: dimension mismatch");
  const cplx v = (rho.matrix() * h.toMatrix()).trace();
  return v.real();
}

double variance(const PureState& psi, const HamiltonianSpec& h) {
  if (psi.dim() != h.dim())
    throw DimensionError("variance: dimension mismatch");
  const Vector hpsi = h.toMatrix() * psi.amplitudes();
  const double h2 = hpsi.squaredNorm();
  const double h1 = psi.amplitudes().dot(hpsi).real();
  return std::max(0.0, h2 - h1 * h1);
}

} // namespace qms

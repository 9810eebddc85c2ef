#include "qms/channels.hpp"

#include <cmath>

#include "qms/kernels.hpp"

namespace qms {

namespace {

std::vector<int> subindices(const std::vector<int>& dims, int acts_on) {
  if (acts_on < 0 || acts_on >= static_cast<int>(dims.size()))
    throw DimensionError("channel: acts_on outside dimension list");
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("channel: nonpositive factor dimension");
    total *= d;
  }
  long right = 1; // product of dims after acts_on (fast-varying part)
  for (std::size_t s = acts_on + 1; s < dims.size(); ++s) right *= dims[s];
  const int d = dims[acts_on];
  std::vector<int> sub(total);
  for (long i = 0; i < total; ++i) sub[i] = int((i / right) % d);
  return sub;
}

long product(const std::vector<int>& dims) {
  long total = 1;
  for (int d : dims) total *= d;
  return total;
}

} // namespace

std::vector<int> SchemeConfig::factor_dims() const {
  std::vector<int> dims;
  if (v_sequence == VSequence::SwapParallel) {
    dims.assign(steps, n);
  } else {
    dims.push_back(n);
  }
  if (ancilla_dim > 0) dims.push_back(ancilla_dim);
  return dims;
}

int SchemeConfig::total_dim() const {
  return static_cast<int>(product(factor_dims()));
}

void SchemeConfig::validate() const {
  if (n < 1) throw ValidationError("SchemeConfig: n must be >= 1");
  if (steps < 0) throw ValidationError("SchemeConfig: steps must be >= 0");
  if (tau <= 0) throw ValidationError("SchemeConfig: tau must be positive");
  if (gamma < 0) throw ValidationError("SchemeConfig: gamma must be >= 0");
  if (ancilla_dim < 0)
    throw ValidationError("SchemeConfig: ancilla_dim must be >= 0");
  if (v_sequence == VSequence::GroverDiffusion && ancilla_dim != 0)
    throw ValidationError("SchemeConfig: GroverDiffusion requires ancilla_dim = 0");
  if (v_sequence == VSequence::SwapParallel && steps < 1)
    throw ValidationError("SchemeConfig: SwapParallel requires steps >= 1");
  if (v_sequence == VSequence::Custom &&
      static_cast<int>(custom_v.size()) != steps)
    throw ValidationError("SchemeConfig: Custom needs one V per step");
  const long total = product(factor_dims());
  if (total > dim_cap)
    throw DimensionError("SchemeConfig: total dimension " +
                         std::to_string(total) + " exceeds cap " +
                         std::to_string(dim_cap));
  for (const Matrix& v : custom_v) {
    if (v.rows() != total || v.cols() != total)
      throw DimensionError("SchemeConfig: custom V dimension mismatch");
    if ((v.adjoint() * v - Matrix::Identity(total, total)).cwiseAbs().maxCoeff() >
        1e-10)
      throw ValidationError("SchemeConfig: custom V not unitary");
  }
}

const char* v_sequence_name(VSequence v) {
  switch (v) {
  case VSequence::GroverDiffusion: return "grover_diffusion";
  case VSequence::SwapParallel: return "swap_parallel";
  case VSequence::Identity: return "identity";
  case VSequence::Custom: return "custom";
  }
  return "unknown";
}

DephasingChannel::DephasingChannel(std::vector<int> dims, int acts_on,
                                   double gamma, double tau)
    : dims_(std::move(dims)), acts_on_(acts_on), gamma_(gamma), tau_(tau) {
  if (gamma < 0) throw ValidationError("DephasingChannel: gamma must be >= 0");
  if (tau <= 0) throw ValidationError("DephasingChannel: tau must be positive");
  subindex_ = subindices(dims_, acts_on_);
  total_dim_ = static_cast<int>(subindex_.size());
  eta_ = std::exp(-gamma_ * tau_);
}

void DephasingChannel::applyInPlace(Matrix& m) const {
  if (m.rows() != total_dim_ || m.cols() != total_dim_)
    throw DimensionError("DephasingChannel: dimension mismatch");
  if (eta_ == 1.0) return;
  const int n = total_dim_;
  // save the undamped entries (equal sensing subindex on row and column),
  // damp everything, then write them back
  std::vector<cplx> saved;
  saved.reserve(std::size_t(n) * n / std::max(1, dims_[acts_on_]));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (subindex_[i] == subindex_[j]) saved.push_back(m(i, j));
  kernels::scale_real(m.data(), std::size_t(n) * n, eta_);
  std::size_t k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (subindex_[i] == subindex_[j]) m(i, j) = saved[k++];
}

DensityMatrix DephasingChannel::apply(const DensityMatrix& rho) const {
  Matrix m = rho.matrix();
  applyInPlace(m);
  return DensityMatrix::fromMatrix(std::move(m));
}

OracleUnitary::OracleUnitary(std::vector<int> dims, int acts_on,
                             int label_one_based, double omega, double tau)
    : dims_(std::move(dims)), acts_on_(acts_on), label_(label_one_based),
      omega_(omega), tau_(tau) {
  if (tau <= 0) throw ValidationError("OracleUnitary: tau must be positive");
  if (label_ < 1 || label_ > dims_[std::size_t(acts_on_)])
    throw DimensionError("OracleUnitary: label outside 1..N");
  const std::vector<int> sub = subindices(dims_, acts_on_);
  total_dim_ = static_cast<int>(sub.size());
  const cplx phase = std::exp(cplx(0, -omega_ * tau_));
  phases_ = Vector::Ones(total_dim_);
  for (int i = 0; i < total_dim_; ++i)
    if (sub[i] == label_ - 1) phases_(i) = phase;
}

void OracleUnitary::conjugateInPlace(Matrix& m) const {
  if (m.rows() != total_dim_ || m.cols() != total_dim_)
    throw DimensionError("OracleUnitary: dimension mismatch");
  const int n = total_dim_;
  for (int j = 0; j < n; ++j) {
    cplx* col = m.data() + std::size_t(j) * n;
    kernels::hadamard(col, phases_.data(), std::size_t(n)); // rows: * u_i
    kernels::scale(col, std::size_t(n), std::conj(phases_(j))); // col: * conj(u_j)
  }
}

DensityMatrix OracleUnitary::apply(const DensityMatrix& rho) const {
  Matrix m = rho.matrix();
  conjugateInPlace(m);
  return DensityMatrix::fromMatrix(std::move(m));
}

KrausChannel::KrausChannel(std::vector<Matrix> operators)
    : ops_(std::move(operators)) {
  if (ops_.empty()) throw ValidationError("KrausChannel: no operators");
  const auto rows = ops_.front().rows();
  Matrix sum = Matrix::Zero(ops_.front().cols(), ops_.front().cols());
  for (const Matrix& k : ops_) {
    if (k.rows() != rows || k.cols() != ops_.front().cols())
      throw DimensionError("KrausChannel: inconsistent operator shapes");
    sum += k.adjoint() * k;
  }
  const double err =
      (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10)
    throw ValidationError("KrausChannel: completeness violation " +
                          std::to_string(err));
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  if (rho.dim() != ops_.front().cols())
    throw DimensionError("KrausChannel: dimension mismatch");
  Matrix out = Matrix::Zero(ops_.front().rows(), ops_.front().rows());
  for (const Matrix& k : ops_) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::fromMatrix(std::move(out));
}

DephasingChannel sensing_dephasing(const SchemeConfig& cfg) {
  return DephasingChannel(cfg.factor_dims(), 0, cfg.gamma, cfg.tau);
}

OracleUnitary sensing_oracle(int label_one_based, const SchemeConfig& cfg) {
  return OracleUnitary(cfg.factor_dims(), 0, label_one_based, cfg.omega,
                       cfg.tau);
}

DensityMatrix interrogation_step(int label_one_based, const SchemeConfig& cfg,
                                 const DensityMatrix& rho) {
  Matrix m = rho.matrix();
  sensing_oracle(label_one_based, cfg).conjugateInPlace(m);
  sensing_dephasing(cfg).applyInPlace(m);
  return DensityMatrix::fromMatrix(std::move(m));
}

Matrix sensing_projector_commutator(int label_one_based,
                                    const std::vector<int>& dims,
                                    const Matrix& m) {
  const std::vector<int> sub = subindices(dims, 0);
  const int n = static_cast<int>(sub.size());
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("sensing_projector_commutator: dimension mismatch");
  const int x = label_one_based - 1;
  Matrix out(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int f = (sub[i] == x ? 1 : 0) - (sub[j] == x ? 1 : 0);
      out(i, j) = f == 0 ? cplx(0, 0) : double(f) * m(i, j);
    }
  return out;
}

std::pair<DensityMatrix, Matrix>
step_with_derivative(int label_one_based, const SchemeConfig& cfg,
                     const DensityMatrix& rho, const Matrix& drho,
                     const Matrix* v) {
  const auto dims = cfg.factor_dims();
  const OracleUnitary u = sensing_oracle(label_one_based, cfg);
  const DephasingChannel deph = sensing_dephasing(cfg);

  Matrix r = rho.matrix();
  u.conjugateInPlace(r); // U rho U†

  Matrix dr = drho;
  if (dr.size() == 0) dr = Matrix::Zero(rho.dim(), rho.dim());
  u.conjugateInPlace(dr);
  dr += cplx(0, -cfg.tau) *
        sensing_projector_commutator(label_one_based, dims, r);

  deph.applyInPlace(r);
  deph.applyInPlace(dr);

  if (v != nullptr) {
    r = (*v) * r * v->adjoint();
    dr = (*v) * dr * v->adjoint();
  }
  return {DensityMatrix::fromMatrix(std::move(r)), std::move(dr)};
}

} // namespace qms

#include "qms/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "qms/geometry.hpp"

namespace qms {

namespace {

Matrix swap_factors(const std::vector<int>& dims, int a, int b) {
  long total = 1;
  for (int d : dims) total *= d;
  const int k = static_cast<int>(dims.size());
  std::vector<long> stride(k, 1);
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
  Matrix v = Matrix::Zero(total, total);
  for (long i = 0; i < total; ++i) {
    // decompose, swap components a and b, reassemble
    std::vector<long> comp(k);
    long r = i;
    for (int s = 0; s < k; ++s) { comp[s] = r / stride[s]; r %= stride[s]; }
    std::swap(comp[a], comp[b]);
    long j = 0;
    for (int s = 0; s < k; ++s) j += comp[s] * stride[s];
    v(j, i) = 1.0;
  }
  return v;
}

} // namespace

Matrix intertwiner(const SchemeConfig& cfg, int step_index) {
  switch (cfg.v_sequence) {
  case VSequence::Identity:
    return {};
  case VSequence::GroverDiffusion: {
    const int n = cfg.total_dim();
    const Vector psi0 = PureState::uniform(n).amplitudes();
    return 2.0 * (psi0 * psi0.adjoint()) - Matrix::Identity(n, n);
  }
  case VSequence::SwapParallel: {
    // step k routes the sensing slot to copy k+1; nothing to do after the
    // last copy has been interrogated
    if (step_index + 1 >= cfg.steps) return {};
    return swap_factors(cfg.factor_dims(), 0, step_index + 1);
  }
  case VSequence::Custom:
    return cfg.custom_v.at(std::size_t(step_index));
  }
  return {};
}

Trajectory run_scheme(const SchemeConfig& cfg, const DensityMatrix& probe,
                      int label_one_based) {
  cfg.validate();
  const int total = cfg.total_dim();
  if (probe.dim() != total)
    throw DimensionError("run_scheme: probe dim " + std::to_string(probe.dim()) +
                         " != scheme dim " + std::to_string(total));
  if (label_one_based < 1 || label_one_based > cfg.n)
    throw ValidationError("run_scheme: label outside 1..N");

  Trajectory traj;
  traj.config = cfg;
  traj.label = label_one_based;
  traj.times.push_back(0.0);
  traj.with_oracle.push_back(probe);
  traj.reference.push_back(probe);
  traj.derivatives.push_back(Matrix::Zero(total, total));

  const DephasingChannel deph = sensing_dephasing(cfg);
  DensityMatrix ref = probe;
  for (int k = 0; k < cfg.steps; ++k) {
    const Matrix v = intertwiner(cfg, k);
    const Matrix* vp = v.size() > 0 ? &v : nullptr;

    auto [next, dnext] = step_with_derivative(
        label_one_based, cfg, traj.with_oracle.back(),
        traj.derivatives.back(), vp);

    Matrix r = ref.matrix();
    deph.applyInPlace(r);
    if (vp != nullptr) r = v * r * v.adjoint();
    ref = DensityMatrix::fromMatrix(std::move(r));

    traj.times.push_back((k + 1) * cfg.tau);
    traj.with_oracle.push_back(std::move(next));
    traj.reference.push_back(ref);
    traj.derivatives.push_back(std::move(dnext));
  }
  return traj;
}

std::vector<std::pair<double, double>>
average_distance(const std::vector<Trajectory>& per_label) {
  if (per_label.empty())
    throw ValidationError("average_distance: no trajectories");
  const SchemeConfig& cfg = per_label.front().config;
  if (static_cast<int>(per_label.size()) != cfg.n)
    throw ValidationError("average_distance: need one trajectory per label");
  std::vector<bool> seen(cfg.n, false);
  for (const Trajectory& t : per_label) {
    if (t.config.n != cfg.n || t.config.steps != cfg.steps ||
        t.config.tau != cfg.tau || t.config.omega != cfg.omega ||
        t.config.gamma != cfg.gamma ||
        t.config.v_sequence != cfg.v_sequence ||
        t.times.size() != per_label.front().times.size())
      throw ValidationError("average_distance: mismatched configs");
    if (seen[t.label - 1])
      throw ValidationError("average_distance: duplicate label");
    seen[t.label - 1] = true;
  }
  std::vector<std::pair<double, double>> out;
  const std::size_t n_times = per_label.front().times.size();
  for (std::size_t k = 0; k < n_times; ++k) {
    double dbar = 0;
    for (const Trajectory& t : per_label)
      dbar += bures_angle(t.with_oracle[k], t.reference[k]);
    out.emplace_back(per_label.front().times[k], dbar);
  }
  return out;
}

double success_probability(const Trajectory& traj) {
  const std::vector<int> dims = traj.config.factor_dims();
  const DensityMatrix& rho = traj.final_state();
  if (dims.size() == 1)
    return rho.matrix()(traj.label - 1, traj.label - 1).real();
  const DensityMatrix sensing = partial_trace(rho, {0}, dims);
  return sensing.matrix()(traj.label - 1, traj.label - 1).real();
}

double discrete_grover(int n, int queries) {
  SchemeConfig cfg;
  cfg.n = n;
  cfg.steps = queries;
  cfg.tau = 1.0;
  cfg.omega = std::acos(-1.0); // tau = pi/omega convention
  cfg.gamma = 0.0;
  cfg.v_sequence = VSequence::GroverDiffusion;
  const DensityMatrix probe = DensityMatrix::fromPure(PureState::uniform(n));
  double first = -1;
  for (int x = 1; x <= n; ++x) {
    const Trajectory traj = run_scheme(cfg, probe, x);
    const double p = success_probability(traj);
    if (first < 0) first = p;
    else if (std::abs(p - first) > 1e-12)
      throw ValidationError("discrete_grover: success depends on label");
  }
  return first;
}

std::vector<double> stepwise_inequality_audit(const Trajectory& traj) {
  const SchemeConfig& cfg = traj.config;
  // U† is the oracle at -omega
  const OracleUnitary udag(cfg.factor_dims(), 0, traj.label, -cfg.omega,
                           cfg.tau);
  std::vector<double> margins;
  for (int k = 0; k < traj.steps(); ++k) {
    Matrix m = traj.reference[k].matrix();
    udag.conjugateInPlace(m);
    const DensityMatrix rotated = DensityMatrix::fromMatrix(std::move(m));
    const double rhs = bures_angle(traj.reference[k], rotated);
    const double lhs =
        bures_angle(traj.with_oracle[k + 1], traj.reference[k + 1]) -
        bures_angle(traj.with_oracle[k], traj.reference[k]);
    margins.push_back(rhs - lhs);
  }
  return margins;
}

} // namespace qms

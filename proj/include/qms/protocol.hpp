#pragma once

#include <utility>
#include <vector>

#include "qms/channels.hpp"
#include "qms/scheme_config.hpp"
#include "qms/states.hpp"

namespace qms {

/// Full record of one simulated run: the oracle-driven states, the
/// reference states (same V sequence, oracle removed), and the exact
/// omega-derivatives of the oracle-driven states. Index k = after k steps.
struct Trajectory {
  SchemeConfig config;
  int label = 1;
  std::vector<double> times;
  std::vector<DensityMatrix> with_oracle;
  std::vector<DensityMatrix> reference;
  std::vector<Matrix> derivatives;

  int steps() const { return static_cast<int>(times.size()) - 1; }
  const DensityMatrix& final_state() const { return with_oracle.back(); }
  const Matrix& final_derivative() const { return derivatives.back(); }
};

/// Intertwining unitary for step index k (0-based); identity-free layouts
/// return an empty matrix.
Matrix intertwiner(const SchemeConfig& cfg, int step_index);

/// Simulate the M-step scheme for oracle label x with analytic derivative
/// propagation; records every intermediate state.
Trajectory run_scheme(const SchemeConfig& cfg, const DensityMatrix& probe,
                      int label_one_based);

/// Average probe distance Dbar_t = sum_x D(rho^x_t, rho_t) per recorded
/// time; expects one trajectory per label 1..N under the same config.
std::vector<std::pair<double, double>>
average_distance(const std::vector<Trajectory>& per_label);

/// <x| Tr_rest(rho_final) |x> for the trajectory's own label.
double success_probability(const Trajectory& traj);

/// Discrete Grover search as the continuous scheme at omega*tau = pi,
/// gamma = 0: returns the success probability after `queries` steps
/// (checked to be label-independent).
double discrete_grover(int n, int queries);

/// Per-step margins of the distance-increment inequality
///   D(rho^x_{t+tau}, rho_{t+tau}) - D(rho^x_t, rho_t)
///     <= D(rho_t, U^x† rho_t U^x);
/// margin = rhs - lhs, so nonnegative (up to numerics) when the chain holds.
std::vector<double> stepwise_inequality_audit(const Trajectory& traj);

} // namespace qms

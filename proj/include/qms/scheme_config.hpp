#pragma once

#include <vector>

#include "qms/states.hpp"

namespace qms {

/// Intertwining unitary layout between interrogation steps.
enum class VSequence { GroverDiffusion, SwapParallel, Identity, Custom };

/// All parameters of one run of the interrogation scheme.
///
/// The total interrogation time T = M*tau is always derived, never stored.
/// The sensing subsystem is the leftmost tensor factor; for SwapParallel the
/// space holds M copies of it, otherwise a single copy plus an optional
/// ancilla factor.
struct SchemeConfig {
  int n = 2;              // database size N
  int steps = 1;          // M
  double tau = 1.0;       // step time
  double omega = 1.0;     // frequency
  double gamma = 0.0;     // dephasing rate
  int ancilla_dim = 0;    // 0 = no ancilla
  VSequence v_sequence = VSequence::Identity;
  std::vector<Matrix> custom_v; // one per step when Custom
  int dim_cap = kDefaultDimCap;

  double total_time() const { return steps * tau; }

  /// Tensor-factor dimensions, sensing slot first.
  std::vector<int> factor_dims() const;
  int total_dim() const;

  /// Throws ValidationError/DimensionError on any bad field combination.
  void validate() const;
};

const char* v_sequence_name(VSequence v);

} // namespace qms

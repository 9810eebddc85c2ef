#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qms/scheme_config.hpp"
#include "qms/states.hpp"

namespace qms::probeopt {

struct OptimizationResult {
  double best_value = 0;
  PureState best_probe = PureState::basis(1, 0);
  int restarts = 0;
  double converged_fraction = 0;
  std::vector<int> iterations_used;
  std::uint64_t seed = 0;
};

struct OptimizerSettings {
  int restarts = 50;
  int max_iterations = 5000;
  double tolerance = 1e-8;
  double gradient_step = 1e-6;
};

/// sum_x sqrt(F_omega^x) for a fixed pure probe in the restricted scheme
/// (SwapParallel or single-step; no Custom V). F^x comes from the analytic
/// derivative propagated by run_scheme.
double sum_sqrt_qfi(const PureState& probe, const SchemeConfig& cfg);

/// Same objective with the square-root kink smoothed near F = 0; used
/// inside the optimizer only.
double sum_sqrt_qfi_smoothed(const PureState& probe, const SchemeConfig& cfg);

/// sqrt(F^{x}) for one known label.
double sqrt_qfi_single(const PureState& probe, const SchemeConfig& cfg,
                       int label_one_based);

/// Multistart projected-gradient ascent over unit-norm probes. best_value
/// is the exact (unsmoothed) objective at the best probe.
OptimizationResult optimize_sum_sqrt_qfi(const SchemeConfig& cfg,
                                         int restarts, std::uint64_t seed,
                                         OptimizerSettings settings = {});

/// Same optimizer applied to sqrt(F^{x0}) for a fixed known label.
OptimizationResult optimize_sqrt_qfi_single(const SchemeConfig& cfg,
                                            int label_one_based, int restarts,
                                            std::uint64_t seed,
                                            OptimizerSettings settings = {});

struct ConjectureCheck {
  double lhs = 0;  // max_probe sum_x sqrt(F^x)
  double rhs = 0;  // 2*sqrt(N) * max_probe sqrt(F^{x0=1})
  double ratio = 0;
  bool counterexample_candidate = false;
  OptimizationResult lhs_result;
  OptimizationResult rhs_result;
};

ConjectureCheck conjecture_check(const SchemeConfig& cfg, int restarts,
                                 std::uint64_t seed);

struct ScalingScanRow {
  int n = 0;
  int m = 0;
  double total_time = 0;
  double dbar = 0;
  double ratio = 0; // dbar / (sqrt(T) * sqrt(N))
  std::optional<double> envelope; // frequency-way bound, dephased runs only
  bool envelope_ok = true;
};

struct ScalingScan {
  std::vector<ScalingScanRow> rows;
  double alpha = 0; // fitted exponent of Dbar_T vs N
  double beta = 0;  // fitted exponent of Dbar_T vs T
};

/// Simulate the template scheme (uniform probe) over grids of N and M,
/// tabulate the conjecture ratio, and fit log Dbar against log N / log T.
ScalingScan conjecture_scaling_scan(const std::vector<int>& n_values,
                                    const std::vector<int>& m_values,
                                    const SchemeConfig& tmpl);

/// Least-squares slope of log(y) vs log(x); nonpositive points are skipped.
double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys);

} // namespace qms::probeopt

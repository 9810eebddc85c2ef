#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qms/errors.hpp"

namespace qms::bounds {

/// One evaluated bound, optionally paired with a measured value.
struct BoundReport {
  std::string bound_name;
  std::map<std::string, double> parameters;
  double bound_value = 0;
  std::optional<double> measured_value;
  std::optional<bool> satisfied;
  std::optional<double> margin;

  enum class Direction { LowerBound, UpperBound };

  /// Attach a measurement; `direction` says which side the bound sits on
  /// relative to the measured quantity (tolerance 1e-9).
  BoundReport& measure(double value, Direction direction);
};

/// delta-omega >= 1/sqrt(F)
double cramer_rao(double fisher_information);

/// F <= tau^2 * e^{-2*gamma*tau} / (1 - e^{-2*gamma*tau}) * M
double dephasing_qfi_bound(int m, double tau, double gamma);

/// F <= T / (2*gamma), the tau->0 envelope of the above
double fundamental_dephasing_bound(double total_time, double gamma);

/// Noiseless search: T >= (pi / (4*omega)) * sqrt(N)
double noiseless_query_bound(int n, double omega);

/// Dephased search: T >= N * (pi^2/8) * gamma / omega^2
double dephasing_query_bound(int n, double omega, double gamma);

/// Sequential no-ancilla comparison bound: T >= N * 2*gamma/(gamma^2+4*omega^2)
double temme_bound(int n, double omega, double gamma);

/// Dbar_T >= N*pi/4 at perfect distinguishability (needs N >= 2)
double distance_lower_bound(int n);

/// D <= (omega/(2*sqrt(2*gamma))) * sqrt(T), times N when per_label=false
double frequency_way_distance_bound(double total_time, double omega,
                                    double gamma, bool per_label,
                                    int n = 1);

/// Time-way bound Dbar_t <= t * sqrt(N) * omega
double time_way_distance_bound(double t, int n, double omega);

/// Hook for decoherence models with QFI <= rate_coefficient * T:
/// per-label D <= (omega/2) * sqrt(rate_coefficient * T).
double linear_qfi_distance_bound(double total_time, double omega,
                                 double rate_coefficient);

struct CrossoverRow {
  int n;
  double noiseless;  // noiseless_query_bound
  double dephasing;  // dephasing_query_bound
  double temme;      // temme_bound
};

/// Evaluate all three T lower bounds over a range of N.
std::vector<CrossoverRow> crossover_scan(const std::vector<int>& n_values,
                                         double omega, double gamma);

} // namespace qms::bounds

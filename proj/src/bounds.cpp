#include "qms/bounds.hpp"

#include <cmath>

namespace qms::bounds {

namespace {
constexpr double kSlack = 1e-9;
const double kPi = std::acos(-1.0);
} // namespace

BoundReport& BoundReport::measure(double value, Direction direction) {
  measured_value = value;
  if (direction == Direction::LowerBound) {
    // bound_value is a floor for the measured quantity
    margin = value - bound_value;
  } else {
    margin = bound_value - value;
  }
  satisfied = *margin >= -kSlack;
  return *this;
}

double cramer_rao(double fisher_information) {
  if (fisher_information <= 0)
    throw ValidationError("cramer_rao: undefined for F <= 0");
  return 1.0 / std::sqrt(fisher_information);
}

double dephasing_qfi_bound(int m, double tau, double gamma) {
  if (gamma <= 0)
    throw ValidationError(
        "dephasing_qfi_bound: diverges at gamma = 0; use noiseless formulas");
  if (tau <= 0) throw ValidationError("dephasing_qfi_bound: tau must be positive");
  if (m < 0) throw ValidationError("dephasing_qfi_bound: M must be >= 0");
  const double e = std::exp(-2.0 * gamma * tau);
  return tau * tau * e / (1.0 - e) * m;
}

double fundamental_dephasing_bound(double total_time, double gamma) {
  if (total_time <= 0 || gamma <= 0)
    throw ValidationError("fundamental_dephasing_bound: need T > 0, gamma > 0");
  return total_time / (2.0 * gamma);
}

double noiseless_query_bound(int n, double omega) {
  if (n < 1 || omega <= 0)
    throw ValidationError("noiseless_query_bound: need N >= 1, omega > 0");
  return kPi / (4.0 * omega) * std::sqrt(double(n));
}

double dephasing_query_bound(int n, double omega, double gamma) {
  if (n < 1 || omega <= 0 || gamma <= 0)
    throw ValidationError("dephasing_query_bound: need N >= 1, omega > 0, gamma > 0");
  return n * (kPi * kPi / 8.0) * gamma / (omega * omega);
}

double temme_bound(int n, double omega, double gamma) {
  if (n < 1 || omega <= 0 || gamma <= 0)
    throw ValidationError("temme_bound: need N >= 1, omega > 0, gamma > 0");
  return n * 2.0 * gamma / (gamma * gamma + 4.0 * omega * omega);
}

double distance_lower_bound(int n) {
  if (n < 2)
    throw ValidationError("distance_lower_bound: no discrimination problem for N < 2");
  return n * kPi / 4.0;
}

double frequency_way_distance_bound(double total_time, double omega,
                                    double gamma, bool per_label, int n) {
  if (gamma <= 0)
    throw ValidationError("frequency_way_distance_bound: diverges at gamma = 0");
  if (total_time < 0)
    throw ValidationError("frequency_way_distance_bound: T must be >= 0");
  const double per = omega / (2.0 * std::sqrt(2.0 * gamma)) * std::sqrt(total_time);
  return per_label ? per : per * n;
}

double time_way_distance_bound(double t, int n, double omega) {
  if (t < 0 || n < 1)
    throw ValidationError("time_way_distance_bound: need t >= 0, N >= 1");
  return t * std::sqrt(double(n)) * omega;
}

double linear_qfi_distance_bound(double total_time, double omega,
                                 double rate_coefficient) {
  if (total_time < 0 || rate_coefficient < 0)
    throw ValidationError("linear_qfi_distance_bound: negative inputs");
  return omega / 2.0 * std::sqrt(rate_coefficient * total_time);
}

std::vector<CrossoverRow> crossover_scan(const std::vector<int>& n_values,
                                         double omega, double gamma) {
  std::vector<CrossoverRow> rows;
  rows.reserve(n_values.size());
  for (int n : n_values)
    rows.push_back({n, noiseless_query_bound(n, omega),
                    dephasing_query_bound(n, omega, gamma),
                    temme_bound(n, omega, gamma)});
  return rows;
}

} // namespace qms::bounds

#include "qms/probeopt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "qms/bounds.hpp"
#include "qms/geometry.hpp"
#include "qms/protocol.hpp"
#include "qms/random.hpp"

namespace qms::probeopt {

namespace {

constexpr double kSmoothThreshold = 1e-8;
constexpr double kSmoothScale = 2e-4;

void check_restricted(const SchemeConfig& cfg) {
  cfg.validate();
  if (cfg.v_sequence == VSequence::Custom)
    throw ValidationError(
        "probeopt: adaptive (Custom V) configurations are unsupported");
  if (cfg.v_sequence != VSequence::SwapParallel && cfg.steps > 1)
    throw ValidationError(
        "probeopt: restricted scheme requires SwapParallel or a single step");
}

double label_qfi(const PureState& probe, const SchemeConfig& cfg, int label) {
  const Trajectory traj =
      run_scheme(cfg, DensityMatrix::fromPure(probe), label);
  return qfi_sld(traj.final_state(), traj.final_derivative()).value;
}

double sqrt_term(double f, bool smoothed) {
  if (smoothed && f < kSmoothThreshold) return f / kSmoothScale;
  return std::sqrt(std::max(0.0, f));
}

double objective_sum(const PureState& probe, const SchemeConfig& cfg,
                     bool smoothed) {
  double total = 0;
  for (int x = 1; x <= cfg.n; ++x)
    total += sqrt_term(label_qfi(probe, cfg, x), smoothed);
  return total;
}

using Objective = std::function<double(const PureState&)>;

PureState params_to_state(const Eigen::VectorXd& p) {
  const int dim = static_cast<int>(p.size()) / 2;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(p(2 * i), p(2 * i + 1));
  const double norm = v.norm();
  if (norm < 1e-12) return PureState::basis(dim, 0);
  v /= norm;
  return PureState(std::move(v));
}

struct RestartOutcome {
  double value = 0;       // smoothed objective at the local optimum
  Eigen::VectorXd params;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome ascend(const Objective& f, Eigen::VectorXd p,
                      const OptimizerSettings& s) {
  const int npar = static_cast<int>(p.size());
  double value = f(params_to_state(p));
  double step = 0.1;
  RestartOutcome out;
  int it = 0;
  for (; it < s.max_iterations; ++it) {
    // central-difference gradient in the raw (unnormalized) coordinates
    Eigen::VectorXd grad(npar);
    for (int i = 0; i < npar; ++i) {
      Eigen::VectorXd q = p;
      q(i) += s.gradient_step;
      const double fp = f(params_to_state(q));
      q(i) = p(i) - s.gradient_step;
      const double fm = f(params_to_state(q));
      grad(i) = (fp - fm) / (2 * s.gradient_step);
    }
    const double gnorm = grad.norm();
    if (gnorm < 1e-14) { out.converged = true; break; }
    grad /= gnorm;

    // backtracking line search along the normalized gradient
    bool improved = false;
    double trial_step = step;
    while (trial_step > 1e-13) {
      Eigen::VectorXd q = p + trial_step * grad;
      q.normalize();
      const double fv = f(params_to_state(q));
      if (fv > value) {
        const double gain = fv - value;
        p = q;
        value = fv;
        step = std::min(1.0, trial_step * 1.5);
        improved = true;
        if (gain < s.tolerance) { out.converged = true; it++; }
        break;
      }
      trial_step *= 0.5;
    }
    if (!improved) { out.converged = true; break; }
    if (out.converged) break;
  }
  out.value = value;
  out.params = p;
  out.iterations = it;
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("QMSLAB_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

OptimizationResult multistart(const Objective& smoothed,
                              const Objective& exact, int dim, int restarts,
                              std::uint64_t seed,
                              const OptimizerSettings& settings) {
  if (restarts < 1) throw ValidationError("probeopt: restarts must be >= 1");
  std::vector<RestartOutcome> outcomes(restarts);
  auto run_range = [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      auto rng = make_rng(seed, std::uint64_t(r));
      const PureState start = haar_state(dim, rng);
      Eigen::VectorXd p(2 * dim);
      for (int i = 0; i < dim; ++i) {
        p(2 * i) = start.amplitudes()(i).real();
        p(2 * i + 1) = start.amplitudes()(i).imag();
      }
      outcomes[std::size_t(r)] = ascend(smoothed, std::move(p), settings);
    }
  };

  const int threads = std::min(thread_count(), restarts);
  if (threads <= 1) {
    run_range(0, restarts);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (restarts + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(restarts, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // deterministic max-reduce: value first, lowest restart index breaks ties
  int best = 0;
  int converged = 0;
  OptimizationResult result;
  for (int r = 0; r < restarts; ++r) {
    if (outcomes[std::size_t(r)].converged) ++converged;
    result.iterations_used.push_back(outcomes[std::size_t(r)].iterations);
    if (outcomes[std::size_t(r)].value > outcomes[std::size_t(best)].value)
      best = r;
  }
  result.best_probe = params_to_state(outcomes[std::size_t(best)].params);
  result.best_value = exact(result.best_probe);
  result.restarts = restarts;
  result.converged_fraction = double(converged) / restarts;
  result.seed = seed;
  return result;
}

} // namespace

double sum_sqrt_qfi(const PureState& probe, const SchemeConfig& cfg) {
  check_restricted(cfg);
  return objective_sum(probe, cfg, /*smoothed=*/false);
}

double sum_sqrt_qfi_smoothed(const PureState& probe, const SchemeConfig& cfg) {
  check_restricted(cfg);
  return objective_sum(probe, cfg, /*smoothed=*/true);
}

double sqrt_qfi_single(const PureState& probe, const SchemeConfig& cfg,
                       int label_one_based) {
  check_restricted(cfg);
  return std::sqrt(std::max(0.0, label_qfi(probe, cfg, label_one_based)));
}

OptimizationResult optimize_sum_sqrt_qfi(const SchemeConfig& cfg,
                                         int restarts, std::uint64_t seed,
                                         OptimizerSettings settings) {
  check_restricted(cfg);
  const int dim = cfg.total_dim();
  return multistart(
      [&](const PureState& s) { return objective_sum(s, cfg, true); },
      [&](const PureState& s) { return objective_sum(s, cfg, false); }, dim,
      restarts, seed, settings);
}

OptimizationResult optimize_sqrt_qfi_single(const SchemeConfig& cfg,
                                            int label_one_based, int restarts,
                                            std::uint64_t seed,
                                            OptimizerSettings settings) {
  check_restricted(cfg);
  const int dim = cfg.total_dim();
  return multistart(
      [&](const PureState& s) {
        return sqrt_term(label_qfi(s, cfg, label_one_based), true);
      },
      [&](const PureState& s) {
        return sqrt_term(label_qfi(s, cfg, label_one_based), false);
      },
      dim, restarts, seed, settings);
}

ConjectureCheck conjecture_check(const SchemeConfig& cfg, int restarts,
                                 std::uint64_t seed) {
  ConjectureCheck out;
  out.lhs_result = optimize_sum_sqrt_qfi(cfg, restarts, seed);
  out.rhs_result = optimize_sqrt_qfi_single(cfg, 1, restarts, seed + 1);
  out.lhs = out.lhs_result.best_value;
  out.rhs = 2.0 * std::sqrt(double(cfg.n)) * out.rhs_result.best_value;
  out.ratio = out.rhs > 0 ? out.lhs / out.rhs : 0.0;
  out.counterexample_candidate = out.ratio > 1.0 + 1e-6;
  return out;
}

double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (xs[i] <= 0 || ys[i] <= 0) continue;
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-15) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

ScalingScan conjecture_scaling_scan(const std::vector<int>& n_values,
                                    const std::vector<int>& m_values,
                                    const SchemeConfig& tmpl) {
  ScalingScan scan;
  for (int n : n_values) {
    for (int m : m_values) {
      SchemeConfig cfg = tmpl;
      cfg.n = n;
      cfg.steps = m;
      cfg.validate();
      ScalingScanRow row;
      row.n = n;
      row.m = m;
      row.total_time = cfg.total_time();
      if (m == 0) {
        row.dbar = 0;
        row.ratio = 0;
        scan.rows.push_back(row);
        continue;
      }
      const DensityMatrix probe =
          DensityMatrix::fromPure(PureState::uniform(cfg.total_dim()));
      std::vector<Trajectory> trajs;
      for (int x = 1; x <= n; ++x) trajs.push_back(run_scheme(cfg, probe, x));
      row.dbar = average_distance(trajs).back().second;
      row.ratio = row.dbar / (std::sqrt(row.total_time) * std::sqrt(double(n)));
      if (cfg.gamma > 0) {
        row.envelope = bounds::frequency_way_distance_bound(
            row.total_time, cfg.omega, cfg.gamma, /*per_label=*/false, n);
        row.envelope_ok = row.dbar <= *row.envelope + 1e-9;
      }
      scan.rows.push_back(row);
    }
  }

  // exponents: Dbar vs T at fixed N, and Dbar vs N at fixed T, averaged
  std::vector<double> betas, alphas;
  for (int n : n_values) {
    std::vector<double> ts, ds;
    for (const auto& r : scan.rows)
      if (r.n == n && r.m > 0) { ts.push_back(r.total_time); ds.push_back(r.dbar); }
    if (ts.size() >= 2) betas.push_back(fit_loglog_slope(ts, ds));
  }
  for (int m : m_values) {
    std::vector<double> ns, ds;
    for (const auto& r : scan.rows)
      if (r.m == m && r.m > 0) { ns.push_back(double(r.n)); ds.push_back(r.dbar); }
    if (ns.size() >= 2) alphas.push_back(fit_loglog_slope(ns, ds));
  }
  auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0;
    for (double x : v) s += x;
    return s / double(v.size());
  };
  scan.beta = mean(betas);
  scan.alpha = mean(alphas);
  return scan;
}

} // namespace qms::probeopt

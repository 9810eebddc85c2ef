#include "qms/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "qms/bounds.hpp"
#include "qms/channels.hpp"
#include "qms/geometry.hpp"
#include "qms/kernels.hpp"
#include "qms/probeopt.hpp"
#include "qms/protocol.hpp"
#include "qms/random.hpp"

namespace qms::report {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------
// config parsing

/// Expand flat dotted keys ("scheme.n": 4) into nested objects.
nlohmann::json expand_dotted(const nlohmann::json& raw) {
  if (!raw.is_object()) throw ConfigError("config: top level must be an object");
  nlohmann::json out = nlohmann::json::object();
  for (auto it = raw.begin(); it != raw.end(); ++it) {
    const std::string& key = it.key();
    nlohmann::json* node = &out;
    std::size_t start = 0;
    std::size_t dot;
    while ((dot = key.find('.', start)) != std::string::npos) {
      node = &(*node)[key.substr(start, dot - start)];
      start = dot + 1;
    }
    (*node)[key.substr(start)] = it.value();
  }
  return out;
}

class FieldReader {
public:
  explicit FieldReader(const nlohmann::json& j) : root_(j) {}

  const nlohmann::json* find(const std::string& path) const {
    const nlohmann::json* node = &root_;
    std::size_t start = 0;
    while (true) {
      const std::size_t dot = path.find('.', start);
      const std::string part = path.substr(start, dot - start);
      if (!node->is_object() || !node->contains(part)) return nullptr;
      node = &(*node)[part];
      if (dot == std::string::npos) return node;
      start = dot + 1;
    }
  }

  double number(const std::string& path, double fallback) const {
    const auto* v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_number())
      throw ConfigError("config field '" + path + "' must be a number");
    return v->get<double>();
  }

  int integer(const std::string& path, int fallback) const {
    const auto* v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_number_integer())
      throw ConfigError("config field '" + path + "' must be an integer");
    return v->get<int>();
  }

  std::string text(const std::string& path, const std::string& fallback) const {
    const auto* v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_string())
      throw ConfigError("config field '" + path + "' must be a string");
    return v->get<std::string>();
  }

  template <typename T>
  std::vector<T> list(const std::string& path, std::vector<T> fallback) const {
    const auto* v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_array())
      throw ConfigError("config field '" + path + "' must be an array");
    std::vector<T> out;
    for (const auto& e : *v) {
      if (!e.is_number())
        throw ConfigError("config field '" + path + "' must hold numbers");
      out.push_back(e.get<T>());
    }
    return out;
  }

private:
  const nlohmann::json& root_;
};

VSequence parse_v_sequence(const std::string& name) {
  if (name == "grover_diffusion") return VSequence::GroverDiffusion;
  if (name == "swap_parallel") return VSequence::SwapParallel;
  if (name == "identity") return VSequence::Identity;
  throw ConfigError("config field 'scheme.v_sequence' must be one of "
                    "grover_diffusion|swap_parallel|identity");
}

// ---------------------------------------------------------------------
// serialization helpers

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json scheme_to_json(const SchemeConfig& s) {
  json j;
  j["n"] = s.n;
  j["m"] = s.steps;
  j["tau"] = s.tau;
  j["omega"] = s.omega;
  j["gamma"] = s.gamma;
  j["ancilla_dim"] = s.ancilla_dim;
  j["v_sequence"] = v_sequence_name(s.v_sequence);
  j["total_time"] = s.total_time();
  return j;
}

json bound_to_json(const bounds::BoundReport& b) {
  json j;
  j["bound_name"] = b.bound_name;
  j["parameters"] = json(b.parameters);
  j["bound_value"] = b.bound_value;
  if (b.measured_value) j["measured_value"] = *b.measured_value;
  if (b.satisfied) j["satisfied"] = *b.satisfied;
  if (b.margin) j["margin"] = *b.margin;
  return j;
}

struct ReportSink {
  const ExperimentConfig& cfg;
  json results = json::object();
  std::vector<bounds::BoundReport> bound_reports;
  std::vector<Series> series;

  bool all_satisfied() const {
    for (const auto& b : bound_reports)
      if (b.satisfied && !*b.satisfied) return false;
    return true;
  }

  int finalize(const json& resolved_config) const {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const bool ok = all_satisfied();
    if (cfg.format != Format::Csv) {
      json root;
      root["tool"] = {{"name", kToolName},
                      {"version", kToolVersion},
                      {"simd_backend",
                       kernels::backend_name(kernels::active())}};
      root["command"] = command_name(cfg.command);
      root["seed"] = cfg.seed;
      root["config"] = resolved_config;
      root["results"] = results;
      json br = json::array();
      for (const auto& b : bound_reports) br.push_back(bound_to_json(b));
      root["bound_reports"] = br;
      root["all_satisfied"] = ok;
      std::ofstream out(cfg.output_dir /
                        (std::string(command_name(cfg.command)) +
                         "_report.json"));
      out << root.dump(2) << "\n";
    }
    if (cfg.format != Format::Json && !series.empty())
      emit_plot_data(series, cfg.output_dir);
    return ok ? 0 : 2;
  }
};

json resolved_config_json(const ExperimentConfig& cfg) {
  json j;
  j["command"] = command_name(cfg.command);
  j["scheme"] = scheme_to_json(cfg.scheme);
  j["seed"] = cfg.seed;
  j["format"] = cfg.format == Format::Json
                    ? "json"
                    : (cfg.format == Format::Csv ? "csv" : "both");
  switch (cfg.command) {
  case Command::Grover:
    j["grover"] = {{"max_queries", cfg.max_queries},
                   {"success_threshold", cfg.success_threshold}};
    break;
  case Command::Qfi:
    j["qfi"] = {{"probe", cfg.qfi_probe}};
    break;
  case Command::Conjecture:
    j["conjecture"] = {{"restarts", cfg.restarts}};
    break;
  case Command::Scan:
  case Command::Bounds:
    j["scan"] = {{"n_values", cfg.scan_n}, {"m_values", cfg.scan_m}};
    break;
  case Command::Audit:
    j["audit"] = {{"n_values", cfg.audit_n},
                  {"m_values", cfg.audit_m},
                  {"gammas", cfg.audit_gammas}};
    break;
  }
  return j;
}

// ---------------------------------------------------------------------
// commands

int run_grover(const ExperimentConfig& cfg) {
  ReportSink sink{cfg};
  SchemeConfig scheme = cfg.scheme;
  scheme.v_sequence = VSequence::GroverDiffusion;
  scheme.ancilla_dim = 0;
  const int qmax = cfg.max_queries >= 0 ? cfg.max_queries : scheme.steps;
  scheme.steps = qmax;
  scheme.validate();

  const DensityMatrix probe =
      DensityMatrix::fromPure(PureState::uniform(scheme.n));
  const Trajectory traj = run_scheme(scheme, probe, 1);

  Series succ{"grover_success",
              {"queries", "time", "success_probability"},
              {"oracle calls so far", "t = queries*tau",
               "<x|rho_t|x> for the marked label"},
              {}};
  int first_success = -1;
  for (int q = 0; q <= qmax; ++q) {
    const double p =
        traj.with_oracle[std::size_t(q)].matrix()(0, 0).real();
    succ.rows.push_back({double(q), q * scheme.tau, p});
    if (first_success < 0 && p >= cfg.success_threshold) first_success = q;
  }
  sink.series.push_back(std::move(succ));

  sink.results["success_probability"] = sink.series[0].rows.back()[2];
  sink.results["first_success_query"] = first_success;
  sink.results["success_threshold"] = cfg.success_threshold;

  if (scheme.gamma == 0 && first_success >= 0) {
    bounds::BoundReport b;
    b.bound_name = "noiseless_query_bound";
    b.parameters = {{"N", double(scheme.n)}, {"omega", scheme.omega}};
    b.bound_value = bounds::noiseless_query_bound(scheme.n, scheme.omega);
    b.measure(first_success * scheme.tau,
              bounds::BoundReport::Direction::LowerBound);
    sink.bound_reports.push_back(std::move(b));
  }
  if (scheme.gamma > 0) {
    bounds::BoundReport b;
    b.bound_name = "dephasing_query_bound";
    b.parameters = {{"N", double(scheme.n)},
                    {"omega", scheme.omega},
                    {"gamma", scheme.gamma}};
    b.bound_value =
        bounds::dephasing_query_bound(scheme.n, scheme.omega, scheme.gamma);
    if (first_success >= 0)
      b.measure(first_success * scheme.tau,
                bounds::BoundReport::Direction::LowerBound);
    sink.bound_reports.push_back(std::move(b));
  }
  return sink.finalize(resolved_config_json(cfg));
}

int run_bounds(const ExperimentConfig& cfg) {
  ReportSink sink{cfg};
  const SchemeConfig& s = cfg.scheme;
  const double total_time = s.total_time();
  const std::map<std::string, double> params = {{"N", double(s.n)},
                                                {"omega", s.omega},
                                                {"gamma", s.gamma},
                                                {"T", total_time}};
  auto add = [&](const std::string& name, double value) {
    bounds::BoundReport b;
    b.bound_name = name;
    b.parameters = params;
    b.bound_value = value;
    sink.bound_reports.push_back(std::move(b));
  };
  add("noiseless_query_bound", bounds::noiseless_query_bound(s.n, s.omega));
  if (s.gamma > 0) {
    add("dephasing_query_bound",
        bounds::dephasing_query_bound(s.n, s.omega, s.gamma));
    add("temme_bound", bounds::temme_bound(s.n, s.omega, s.gamma));
    add("dephasing_qfi_bound",
        bounds::dephasing_qfi_bound(s.steps, s.tau, s.gamma));
    add("fundamental_dephasing_bound",
        bounds::fundamental_dephasing_bound(total_time, s.gamma));
    add("cramer_rao_at_fundamental",
        bounds::cramer_rao(
            bounds::fundamental_dephasing_bound(total_time, s.gamma)));
    add("frequency_way_distance_bound_per_label",
        bounds::frequency_way_distance_bound(total_time, s.omega, s.gamma,
                                             true));
  }
  if (s.n >= 2) add("distance_lower_bound", bounds::distance_lower_bound(s.n));
  add("time_way_distance_bound",
      bounds::time_way_distance_bound(total_time, s.n, s.omega));

  if (s.gamma > 0) {
    const auto rows = bounds::crossover_scan(cfg.scan_n, s.omega, s.gamma);
    Series sc{"crossover_scan",
              {"n", "noiseless_query_bound", "dephasing_query_bound",
               "temme_bound"},
              {"database size", "T >= (pi/4w)sqrt(N)",
               "T >= N(pi^2/8)gamma/w^2", "T >= N*2g/(g^2+4w^2)"},
              {}};
    json rows_json = json::array();
    for (const auto& r : rows) {
      sc.rows.push_back({double(r.n), r.noiseless, r.dephasing, r.temme});
      rows_json.push_back({{"n", r.n},
                           {"noiseless", r.noiseless},
                           {"dephasing", r.dephasing},
                           {"temme", r.temme}});
    }
    sink.series.push_back(std::move(sc));
    sink.results["crossover_scan"] = rows_json;
  }
  return sink.finalize(resolved_config_json(cfg));
}

int run_qfi(const ExperimentConfig& cfg) {
  ReportSink sink{cfg};
  const SchemeConfig& s = cfg.scheme;
  const int m = s.steps; // atom count in the metrology reading
  if (m < 1 || m > 6)
    throw ConfigError("qfi: scheme.m (atom count) must be in 1..6");

  const HamiltonianSpec n_hat = HamiltonianSpec::excitationNumber(m);
  sink.results["qfi_pure_plus"] =
      qfi_pure(PureState::plus(m), n_hat, s.tau).value;
  sink.results["qfi_pure_ghz"] =
      qfi_pure(PureState::ghz(m), n_hat, s.tau).value;

  const PureState probe =
      cfg.qfi_probe == "ghz" ? PureState::ghz(m) : PureState::plus(m);
  if (s.gamma > 0) {
    const double f = atomic_dephasing_qfi(probe, m, s.tau, s.gamma, s.omega);
    sink.results["qfi_dephased_probe"] = f;
    sink.results["cramer_rao_dephased"] = bounds::cramer_rao(f);

    bounds::BoundReport eq3;
    eq3.bound_name = "dephasing_qfi_bound";
    eq3.parameters = {{"M", double(m)}, {"tau", s.tau}, {"gamma", s.gamma}};
    eq3.bound_value = bounds::dephasing_qfi_bound(m, s.tau, s.gamma);
    eq3.measure(f, bounds::BoundReport::Direction::UpperBound);
    sink.bound_reports.push_back(std::move(eq3));

    bounds::BoundReport eq4;
    eq4.bound_name = "fundamental_dephasing_bound";
    eq4.parameters = {{"T", s.total_time()}, {"gamma", s.gamma}};
    eq4.bound_value =
        bounds::fundamental_dephasing_bound(s.total_time(), s.gamma);
    eq4.measure(f, bounds::BoundReport::Direction::UpperBound);
    sink.bound_reports.push_back(std::move(eq4));
  }
  return sink.finalize(resolved_config_json(cfg));
}

int run_conjecture(const ExperimentConfig& cfg) {
  ReportSink sink{cfg};
  const auto check =
      probeopt::conjecture_check(cfg.scheme, cfg.restarts, cfg.seed);
  sink.results["lhs_max_sum_sqrt_qfi"] = check.lhs;
  sink.results["rhs_2sqrtN_max_sqrt_qfi"] = check.rhs;
  sink.results["ratio"] = check.ratio;
  sink.results["counterexample_candidate"] = check.counterexample_candidate;
  sink.results["lhs_converged_fraction"] = check.lhs_result.converged_fraction;
  sink.results["rhs_converged_fraction"] = check.rhs_result.converged_fraction;

  // tripwire: sum_x sqrt(F^x) <= 2*tau*M_parallel*sqrt(N) for the
  // frequency-parameter QFI (the omega-pairing analogue of the 2w*sqrt(N)
  // cap on the time-parameter QFI)
  const int copies = cfg.scheme.v_sequence == VSequence::SwapParallel
                         ? cfg.scheme.steps
                         : 1;
  bounds::BoundReport cap;
  cap.bound_name = "sum_sqrt_qfi_cap";
  cap.parameters = {{"N", double(cfg.scheme.n)},
                    {"tau", cfg.scheme.tau},
                    {"copies", double(copies)}};
  cap.bound_value =
      2.0 * cfg.scheme.tau * copies * std::sqrt(double(cfg.scheme.n));
  cap.measure(check.lhs, bounds::BoundReport::Direction::UpperBound);
  sink.bound_reports.push_back(std::move(cap));

  bounds::BoundReport conj;
  conj.bound_name = "conjecture_ratio";
  conj.parameters = {{"N", double(cfg.scheme.n)},
                     {"gamma", cfg.scheme.gamma}};
  conj.bound_value = 1.0;
  conj.measure(check.ratio, bounds::BoundReport::Direction::UpperBound);
  sink.bound_reports.push_back(std::move(conj));
  return sink.finalize(resolved_config_json(cfg));
}

int run_scan(const ExperimentConfig& cfg) {
  ReportSink sink{cfg};
  const auto scan =
      probeopt::conjecture_scaling_scan(cfg.scan_n, cfg.scan_m, cfg.scheme);
  Series table{"scaling_scan",
               {"n", "m", "total_time", "dbar", "ratio", "envelope",
                "envelope_ok"},
               {"database size", "steps", "T = m*tau",
                "sum_x D(rho^x_T, rho_T)", "dbar/(sqrt(T)sqrt(N))",
                "frequency-way bound (nan when gamma=0)",
                "1 when dbar <= envelope"},
               {}};
  bool all_ok = true;
  for (const auto& r : scan.rows) {
    table.rows.push_back(
        {double(r.n), double(r.m), r.total_time, r.dbar, r.ratio,
         r.envelope ? *r.envelope : std::nan(""),
         r.envelope_ok ? 1.0 : 0.0});
    if (!r.envelope_ok) all_ok = false;
  }
  sink.series.push_back(std::move(table));
  sink.results["alpha_fitted_n_exponent"] = scan.alpha;
  sink.results["beta_fitted_time_exponent"] = scan.beta;
  sink.results["max_ratio"] = [&] {
    double m = 0;
    for (const auto& r : scan.rows) m = std::max(m, r.ratio);
    return m;
  }();

  bounds::BoundReport env;
  env.bound_name = "frequency_way_envelope";
  env.parameters = {{"gamma", cfg.scheme.gamma}, {"omega", cfg.scheme.omega}};
  env.bound_value = 0;
  env.measured_value = all_ok ? 1.0 : 0.0;
  env.satisfied = all_ok;
  env.margin = 0;
  sink.bound_reports.push_back(std::move(env));
  return sink.finalize(resolved_config_json(cfg));
}

int run_audit(const ExperimentConfig& cfg) {
  ReportSink sink{cfg};
  Series dbar_series{
      "audit_dbar",
      {"n", "m", "gamma", "t", "dbar", "time_way_bound"},
      {"database size", "total steps", "dephasing rate", "time",
       "sum_x D(rho^x_t, rho_t)", "t*sqrt(N)*omega"},
      {}};
  double min_step_margin = std::numeric_limits<double>::infinity();
  double worst_time_way = std::numeric_limits<double>::infinity();
  bool any_perfect = false;

  for (int n : cfg.audit_n) {
    for (int m : cfg.audit_m) {
      for (double gamma : cfg.audit_gammas) {
        SchemeConfig s = cfg.scheme;
        s.n = n;
        s.steps = m;
        s.gamma = gamma;
        s.v_sequence = VSequence::GroverDiffusion;
        s.ancilla_dim = 0;
        s.validate();
        const DensityMatrix probe =
            DensityMatrix::fromPure(PureState::uniform(n));
        std::vector<Trajectory> trajs;
        for (int x = 1; x <= n; ++x)
          trajs.push_back(run_scheme(s, probe, x));

        for (const Trajectory& t : trajs)
          for (double margin : stepwise_inequality_audit(t))
            min_step_margin = std::min(min_step_margin, margin);

        const auto dbar = average_distance(trajs);
        for (const auto& [t, d] : dbar) {
          const double bound = bounds::time_way_distance_bound(t, n, s.omega);
          dbar_series.rows.push_back({double(n), double(m), gamma, t, d, bound});
          worst_time_way = std::min(worst_time_way, bound - d);
        }

        if (gamma > 0 && m > 0) {
          bounds::BoundReport fw;
          fw.bound_name = "frequency_way_distance_bound";
          fw.parameters = {{"N", double(n)},
                           {"M", double(m)},
                           {"gamma", gamma},
                           {"omega", s.omega}};
          fw.bound_value = bounds::frequency_way_distance_bound(
              s.total_time(), s.omega, gamma, false, n);
          fw.measure(dbar.back().second,
                     bounds::BoundReport::Direction::UpperBound);
          sink.bound_reports.push_back(std::move(fw));

          double max_per_label = 0;
          for (const Trajectory& t : trajs)
            max_per_label = std::max(
                max_per_label,
                bures_angle(t.final_state(), t.reference.back()));
          bounds::BoundReport fwp;
          fwp.bound_name = "frequency_way_distance_bound_per_label";
          fwp.parameters = fw.parameters;
          fwp.bound_value = bounds::frequency_way_distance_bound(
              s.total_time(), s.omega, gamma, true);
          fwp.measure(max_per_label,
                      bounds::BoundReport::Direction::UpperBound);
          sink.bound_reports.push_back(std::move(fwp));
        }

        // Eq. (8) applies at perfect-success configurations
        if (gamma == 0 && n >= 2 && m > 0) {
          bool perfect = true;
          for (const Trajectory& t : trajs)
            if (std::abs(success_probability(t) - 1.0) > 1e-10)
              perfect = false;
          if (perfect) {
            any_perfect = true;
            bounds::BoundReport lb;
            lb.bound_name = "distance_lower_bound";
            lb.parameters = {{"N", double(n)}, {"M", double(m)}};
            lb.bound_value = bounds::distance_lower_bound(n);
            lb.measure(dbar.back().second,
                       bounds::BoundReport::Direction::LowerBound);
            sink.bound_reports.push_back(std::move(lb));
          }
        }
      }
    }
  }

  bounds::BoundReport step;
  step.bound_name = "stepwise_inequality_chain";
  step.bound_value = 0;
  step.measure(min_step_margin, bounds::BoundReport::Direction::LowerBound);
  sink.bound_reports.push_back(std::move(step));

  bounds::BoundReport tw;
  tw.bound_name = "time_way_distance_bound";
  tw.bound_value = 0;
  tw.measure(worst_time_way, bounds::BoundReport::Direction::LowerBound);
  sink.bound_reports.push_back(std::move(tw));

  sink.results["min_stepwise_margin"] = min_step_margin;
  sink.results["min_time_way_slack"] = worst_time_way;
  sink.results["perfect_success_seen"] = any_perfect;
  sink.series.push_back(std::move(dbar_series));
  return sink.finalize(resolved_config_json(cfg));
}

} // namespace

Command parse_command(const std::string& name) {
  if (name == "grover") return Command::Grover;
  if (name == "bounds") return Command::Bounds;
  if (name == "qfi") return Command::Qfi;
  if (name == "conjecture") return Command::Conjecture;
  if (name == "scan") return Command::Scan;
  if (name == "audit") return Command::Audit;
  throw ConfigError("unknown command '" + name + "'");
}

const char* command_name(Command c) {
  switch (c) {
  case Command::Grover: return "grover";
  case Command::Bounds: return "bounds";
  case Command::Qfi: return "qfi";
  case Command::Conjecture: return "conjecture";
  case Command::Scan: return "scan";
  case Command::Audit: return "audit";
  }
  return "unknown";
}

ExperimentConfig parse_config(const nlohmann::json& raw,
                              const std::string& command_override) {
  const nlohmann::json j = expand_dotted(raw);
  const FieldReader r(j);
  ExperimentConfig cfg;

  const std::string cmd =
      !command_override.empty() ? command_override : r.text("command", "");
  if (cmd.empty())
    throw ConfigError("config field 'command' is required when no "
                      "subcommand is given");
  cfg.command = parse_command(cmd);

  // the scheme block is the experiment's physics; every numeric field must
  // be stated explicitly
  for (const char* field :
       {"scheme.n", "scheme.m", "scheme.tau", "scheme.omega", "scheme.gamma"})
    if (r.find(field) == nullptr)
      throw ConfigError(std::string("config field '") + field +
                        "' is required");
  cfg.scheme.n = r.integer("scheme.n", cfg.scheme.n);
  cfg.scheme.steps = r.integer("scheme.m", cfg.scheme.steps);
  cfg.scheme.tau = r.number("scheme.tau", cfg.scheme.tau);
  cfg.scheme.omega = r.number("scheme.omega", cfg.scheme.omega);
  cfg.scheme.gamma = r.number("scheme.gamma", cfg.scheme.gamma);
  cfg.scheme.ancilla_dim = r.integer("scheme.ancilla_dim", 0);
  cfg.scheme.v_sequence =
      parse_v_sequence(r.text("scheme.v_sequence", "identity"));
  cfg.scheme.dim_cap = r.integer("scheme.dim_cap", kDefaultDimCap);

  cfg.seed = std::uint64_t(r.integer("seed", 1));
  cfg.output_dir = r.text("output_dir", ".");
  const std::string fmt = r.text("format", "json");
  if (fmt == "json") cfg.format = Format::Json;
  else if (fmt == "csv") cfg.format = Format::Csv;
  else if (fmt == "both") cfg.format = Format::Both;
  else throw ConfigError("config field 'format' must be json|csv|both");

  cfg.max_queries = r.integer("grover.max_queries", -1);
  cfg.success_threshold =
      r.number("grover.success_threshold", cfg.success_threshold);
  cfg.qfi_probe = r.text("qfi.probe", cfg.qfi_probe);
  if (cfg.qfi_probe != "plus" && cfg.qfi_probe != "ghz")
    throw ConfigError("config field 'qfi.probe' must be plus|ghz");
  cfg.restarts = r.integer("conjecture.restarts", cfg.restarts);
  if (cfg.restarts < 1)
    throw ConfigError("config field 'conjecture.restarts' must be >= 1");
  cfg.scan_n = r.list<int>("scan.n_values", cfg.scan_n);
  cfg.scan_m = r.list<int>("scan.m_values", cfg.scan_m);
  cfg.audit_n = r.list<int>("audit.n_values", cfg.audit_n);
  cfg.audit_m = r.list<int>("audit.m_values", cfg.audit_m);
  cfg.audit_gammas = r.list<double>("audit.gammas", cfg.audit_gammas);

  if (cfg.success_threshold <= 0 || cfg.success_threshold > 1)
    throw ConfigError("config field 'grover.success_threshold' must be in (0,1]");

  // fail fast on the scheme-level preconditions too (names the module rule)
  try {
    cfg.scheme.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("config field group 'scheme': ") + e.what());
  }
  return cfg;
}

void emit_plot_data(const std::vector<Series>& series,
                    const std::filesystem::path& dir) {
  if (series.empty()) throw ValidationError("emit_plot_data: no series");
  std::filesystem::create_directories(dir);
  for (const Series& s : series) {
    if (s.name.empty() || s.columns.empty() || s.rows.empty())
      throw ValidationError("emit_plot_data: empty series '" + s.name + "'");
    std::ofstream csv(dir / (s.name + ".csv"));
    for (std::size_t c = 0; c < s.columns.size(); ++c)
      csv << (c ? "," : "") << s.columns[c];
    csv << "\n";
    for (const auto& row : s.rows) {
      if (row.size() != s.columns.size())
        throw ValidationError("emit_plot_data: ragged row in '" + s.name + "'");
      for (std::size_t c = 0; c < row.size(); ++c)
        csv << (c ? "," : "") << format_double(row[c]);
      csv << "\n";
    }
    json schema;
    schema["file"] = s.name + ".csv";
    json cols = json::array();
    for (std::size_t c = 0; c < s.columns.size(); ++c) {
      json col;
      col["name"] = s.columns[c];
      col["note"] = c < s.column_notes.size() ? s.column_notes[c] : "";
      cols.push_back(col);
    }
    schema["columns"] = cols;
    std::ofstream sch(dir / (s.name + ".schema.json"));
    sch << schema.dump(2) << "\n";
  }
}

double atomic_dephasing_qfi(const PureState& probe, int n_qubits, double tau,
                            double gamma, double omega) {
  if (probe.dim() != (1 << n_qubits))
    throw DimensionError("atomic_dephasing_qfi: probe dim != 2^M");
  const std::vector<int> dims(std::size_t(n_qubits), 2);
  const HamiltonianSpec n_hat = HamiltonianSpec::excitationNumber(n_qubits);
  const int dim = 1 << n_qubits;

  // U = exp(-i*omega*tau*n_hat), diagonal
  Vector phases(dim);
  for (int i = 0; i < dim; ++i)
    phases(i) = std::exp(cplx(0, -omega * tau * n_hat.toMatrix()(i, i).real()));

  Matrix rho = probe.amplitudes() * probe.amplitudes().adjoint();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      rho(i, j) *= phases(i) * std::conj(phases(j));
  Matrix drho = cplx(0, -tau) * (n_hat.toMatrix() * rho - rho * n_hat.toMatrix());

  if (gamma > 0) {
    for (int q = 0; q < n_qubits; ++q) {
      const DephasingChannel ch(dims, q, gamma, tau);
      ch.applyInPlace(rho);
      ch.applyInPlace(drho);
    }
  }
  return qfi_sld(DensityMatrix::fromMatrix(std::move(rho)), drho).value;
}

int run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.command) {
  case Command::Grover: return run_grover(cfg);
  case Command::Bounds: return run_bounds(cfg);
  case Command::Qfi: return run_qfi(cfg);
  case Command::Conjecture: return run_conjecture(cfg);
  case Command::Scan: return run_scan(cfg);
  case Command::Audit: return run_audit(cfg);
  }
  throw ConfigError("run_experiment: unhandled command");
}

} // namespace qms::report

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qms/scheme_config.hpp"

namespace qms::report {

inline constexpr const char* kToolName = "qmslab";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Grover, Bounds, Qfi, Conjecture, Scan, Audit };
enum class Format { Json, Csv, Both };

Command parse_command(const std::string& name);
const char* command_name(Command c);

/// Fully resolved experiment description. Parsed from a JSON config file
/// (nested objects or flat dotted keys) plus CLI overrides; every field is
/// validated before any computation starts.
struct ExperimentConfig {
  Command command = Command::Bounds;
  SchemeConfig scheme;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  Format format = Format::Json;

  // grover
  int max_queries = -1; // default: scheme.steps
  double success_threshold = 0.5;
  // qfi
  std::string qfi_probe = "plus"; // plus | ghz
  // conjecture
  int restarts = 50;
  // scan / bounds crossover
  std::vector<int> scan_n{2, 4};
  std::vector<int> scan_m{1, 2, 4, 8, 16};
  // audit
  std::vector<int> audit_n{2, 4, 8};
  std::vector<int> audit_m{1, 5, 20};
  std::vector<double> audit_gammas{0.0, 0.1, 0.5};
};

/// Parse and validate. `command_override` (from the CLI subcommand) wins
/// over a "command" key in the file. Throws ConfigError with the offending
/// field path.
ExperimentConfig parse_config(const nlohmann::json& raw,
                              const std::string& command_override = "");

/// Named table destined for one CSV file (plus an adjacent schema file).
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::string> column_notes; // one per column, may be empty
  std::vector<std::vector<double>> rows;
};

/// Write one CSV (and .schema.json) per series into `dir`. Numeric output
/// is locale-independent and bit-stable. Empty series are an error.
void emit_plot_data(const std::vector<Series>& series,
                    const std::filesystem::path& dir);

/// Run the experiment, write report files into output_dir. Returns 0 when
/// every asserted bound is satisfied, 2 when an audit failed.
int run_experiment(const ExperimentConfig& cfg);

/// Per-qubit-dephased Ramsey QFI: M two-level atoms, generator the total
/// excitation number, each atom independently dephased with rate gamma over
/// time tau. Used by the qfi command and the bound-verification suites.
double atomic_dephasing_qfi(const PureState& probe, int n_qubits, double tau,
                            double gamma, double omega);

} // namespace qms::report

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qms/errors.hpp"
#include "qms/report.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--config", opts.config_path, "JSON config file");
  sub->add_option("--out", opts.out_dir, "output directory");
  sub->add_option("--format", opts.format, "json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  sub->add_option("--seed", opts.seed, "PRNG seed")
      ->each([&](const std::string&) { opts.seed_set = true; });
}

int dispatch(const std::string& command, const CommonOpts& opts) {
  nlohmann::json raw = nlohmann::json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in)
      throw qms::ConfigError("cannot open config file '" + opts.config_path +
                             "'");
    try {
      raw = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw qms::ConfigError(std::string("config parse error: ") + e.what());
    }
  }
  auto cfg = qms::report::parse_config(raw, command);
  if (opts.seed_set) cfg.seed = opts.seed;
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (!opts.format.empty()) {
    if (opts.format == "json") cfg.format = qms::report::Format::Json;
    else if (opts.format == "csv") cfg.format = qms::report::Format::Csv;
    else cfg.format = qms::report::Format::Both;
  }
  return qms::report::run_experiment(cfg);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"interrogation-scheme simulator: Grover search under "
               "dephasing, QFI/Bures bound audits, probe optimization"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {"grover",     "bounds", "qfi",
                                             "conjecture", "scan",   "audit"};
  std::vector<CommonOpts> opts(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i)
    add_common(app.add_subcommand(commands[i]), opts[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    for (std::size_t i = 0; i < commands.size(); ++i)
      if (app.get_subcommand(commands[i])->parsed())
        return dispatch(commands[i], opts[i]);
    std::cerr << "no subcommand given\n";
    return 1;
  } catch (const qms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const qms::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

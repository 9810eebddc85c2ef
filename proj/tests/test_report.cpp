#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qms/report.hpp"

using namespace qms;
using namespace qms::report;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const double kPi = std::acos(-1.0);

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("qmslab_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base_config(const std::string& command) {
  json j;
  j["command"] = command;
  j["scheme"] = {{"n", 4}, {"m", 1},    {"tau", 1.0},
                 {"omega", kPi}, {"gamma", 0.0}};
  return j;
}

} // namespace

TEST_CASE("parse_config validation") {
  SUBCASE("missing field is named in the error") {
    json j = base_config("grover");
    j["scheme"].erase("omega");
    try {
      parse_config(j);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("scheme.omega") != std::string::npos);
    }
  }
  SUBCASE("command required without an override") {
    json j = base_config("grover");
    j.erase("command");
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    CHECK_NOTHROW(parse_config(j, "grover"));
  }
  SUBCASE("flat dotted keys are equivalent to nested objects") {
    json flat;
    flat["command"] = "bounds";
    flat["scheme.n"] = 8;
    flat["scheme.m"] = 2;
    flat["scheme.tau"] = 0.5;
    flat["scheme.omega"] = 1.0;
    flat["scheme.gamma"] = 0.1;
    const auto a = parse_config(flat);
    json nested = base_config("bounds");
    nested["scheme"] = {{"n", 8}, {"m", 2}, {"tau", 0.5},
                        {"omega", 1.0}, {"gamma", 0.1}};
    const auto b = parse_config(nested);
    CHECK(a.scheme.n == b.scheme.n);
    CHECK(a.scheme.tau == b.scheme.tau);
    CHECK(a.scheme.gamma == b.scheme.gamma);
  }
  SUBCASE("bad enum values") {
    json j = base_config("bounds");
    j["format"] = "yaml";
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    json k = base_config("bounds");
    k["scheme"]["v_sequence"] = "adaptive";
    CHECK_THROWS_AS(parse_config(k), ConfigError);
    json q = base_config("qfi");
    q["qfi"] = {{"probe", "w_state"}};
    CHECK_THROWS_AS(parse_config(q), ConfigError);
  }
  SUBCASE("scheme preconditions are checked at parse time") {
    json j = base_config("grover");
    j["scheme"]["n"] = 0;
    try {
      parse_config(j);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("scheme") != std::string::npos);
    }
  }
}

TEST_CASE("grover command report") {
  json j = base_config("grover");
  j["format"] = "both";
  auto cfg = parse_config(j);
  cfg.output_dir = fresh_dir("grover");
  CHECK(run_experiment(cfg) == 0);

  const json report = json::parse(slurp(cfg.output_dir / "grover_report.json"));
  CHECK(report["tool"]["name"] == "qmslab");
  CHECK(report["command"] == "grover");
  CHECK(report["results"]["success_probability"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report["results"]["first_success_query"] == 1);
  CHECK(report["all_satisfied"] == true);
  bool found = false;
  for (const auto& b : report["bound_reports"])
    if (b["bound_name"] == "noiseless_query_bound") {
      found = true;
      CHECK(b["satisfied"] == true);
      CHECK(b["bound_value"].get<double>() ==
            doctest::Approx(0.5).epsilon(1e-12));
    }
  CHECK(found);
  CHECK(fs::exists(cfg.output_dir / "grover_success.csv"));
  CHECK(fs::exists(cfg.output_dir / "grover_success.schema.json"));
}

TEST_CASE("bounds command report values") {
  json j = base_config("bounds");
  j["scheme"] = {{"n", 8}, {"m", 1}, {"tau", 1.0},
                 {"omega", kPi}, {"gamma", 1.0}};
  auto cfg = parse_config(j);
  cfg.output_dir = fresh_dir("bounds");
  CHECK(run_experiment(cfg) == 0);

  const json report = json::parse(slurp(cfg.output_dir / "bounds_report.json"));
  double dephasing = -1, temme = -1;
  for (const auto& b : report["bound_reports"]) {
    if (b["bound_name"] == "dephasing_query_bound")
      dephasing = b["bound_value"].get<double>();
    if (b["bound_name"] == "temme_bound")
      temme = b["bound_value"].get<double>();
  }
  CHECK(dephasing == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(temme == doctest::Approx(0.39524).epsilon(1e-4));
}

TEST_CASE("qfi command and the atomic dephasing oracle") {
  // single dephased qubit anchor: F = tau^2 * e^{-2*gamma*tau} = 1/2
  const double gamma = std::log(2.0) / 2;
  CHECK(atomic_dephasing_qfi(PureState::plus(1), 1, 1.0, gamma, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-10));
  // noiseless GHZ: F = tau^2 * M^2
  CHECK(atomic_dephasing_qfi(PureState::ghz(3), 3, 0.7, 0.0, 1.0) ==
        doctest::Approx(0.49 * 9).epsilon(1e-10));

  json j = base_config("qfi");
  j["scheme"] = {{"n", 2}, {"m", 3}, {"tau", 1.0},
                 {"omega", 1.0}, {"gamma", 0.25}};
  j["qfi"] = {{"probe", "ghz"}};
  auto cfg = parse_config(j);
  cfg.output_dir = fresh_dir("qfi");
  CHECK(run_experiment(cfg) == 0);
  const json report = json::parse(slurp(cfg.output_dir / "qfi_report.json"));
  CHECK(report["results"]["qfi_pure_ghz"].get<double>() ==
        doctest::Approx(9.0).epsilon(1e-10));
  CHECK(report["results"]["qfi_pure_plus"].get<double>() ==
        doctest::Approx(3.0).epsilon(1e-10));
  // dephased value stays under both upper bounds
  CHECK(report["all_satisfied"] == true);
  const double f = report["results"]["qfi_dephased_probe"].get<double>();
  CHECK(f > 0);
  CHECK(f < 9.0);
}

TEST_CASE("reports are byte-identical across repeated runs") {
  json j = base_config("conjecture");
  j["scheme"] = {{"n", 2}, {"m", 1}, {"tau", 1.0},
                 {"omega", 1.0}, {"gamma", 0.0}};
  j["conjecture"] = {{"restarts", 4}};
  j["seed"] = 7;

  auto cfg1 = parse_config(j);
  cfg1.output_dir = fresh_dir("det1");
  auto cfg2 = parse_config(j);
  cfg2.output_dir = fresh_dir("det2");
  CHECK(run_experiment(cfg1) == 0);
  CHECK(run_experiment(cfg2) == 0);
  CHECK(slurp(cfg1.output_dir / "conjecture_report.json") ==
        slurp(cfg2.output_dir / "conjecture_report.json"));
}

TEST_CASE("audit command exits zero and records margins") {
  json j = base_config("audit");
  j["audit"] = {{"n_values", {2, 4}}, {"m_values", {1, 3}},
                {"gammas", {0.0, 0.3}}};
  auto cfg = parse_config(j);
  cfg.output_dir = fresh_dir("audit");
  CHECK(run_experiment(cfg) == 0);
  const json report = json::parse(slurp(cfg.output_dir / "audit_report.json"));
  CHECK(report["results"]["min_stepwise_margin"].get<double>() >= -1e-9);
  CHECK(report["results"]["min_time_way_slack"].get<double>() >= -1e-9);
  CHECK(report["all_satisfied"] == true);
}

TEST_CASE("emit_plot_data") {
  const fs::path dir = fresh_dir("csv");
  Series s{"demo", {"x", "y"}, {"abscissa", "ordinate"}, {{1.0, 2.5}, {2.0, 0.125}}};
  emit_plot_data({s}, dir);
  const std::string csv = slurp(dir / "demo.csv");
  CHECK(csv == "x,y\n1,2.5\n2,0.125\n");
  const json schema = json::parse(slurp(dir / "demo.schema.json"));
  CHECK(schema["file"] == "demo.csv");
  CHECK(schema["columns"][0]["name"] == "x");

  // bit-stable across repeated emission
  emit_plot_data({s}, dir);
  CHECK(slurp(dir / "demo.csv") == csv);

  Series empty{"empty", {"x"}, {}, {}};
  CHECK_THROWS_AS(emit_plot_data({empty}, dir), ValidationError);
  CHECK_THROWS_AS(emit_plot_data({}, dir), ValidationError);
}

// laguerre-ops: run a verification scenario and emit its bound report.
//
//   laguerre-ops run --scenario lemma21 --config cfg.json --out report.json
//   laguerre-ops list-scenarios

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "laguerre/error.hpp"
#include "laguerre/scenarios.hpp"

namespace {

nlohmann::json read_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw laguerre::ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw laguerre::ConfigError("config file '" + path + "' is not valid JSON: " + ex.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laguerre operator verification"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one scenario and write its report");
  std::string scenario, config_path, out_path, format;
  unsigned long long seed = 0;
  run->add_option("--scenario", scenario, "Scenario tag (see list-scenarios)");
  run->add_option("--config", config_path, "JSON scenario configuration");
  run->add_option("--out", out_path, "Report path (stdout when omitted)");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* seed_opt = run->add_option("--seed", seed, "Seed for random test expansions");

  auto* list = app.add_subcommand("list-scenarios", "Print scenario tags and the claims they measure");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& s : laguerre::scenario_catalog()) std::cout << s.tag << "\t" << s.claim << "\n";
    return 0;
  }

  try {
    auto j = read_config(config_path);
    if (!scenario.empty()) j["scenario"] = scenario;
    if (!j.contains("scenario")) throw laguerre::ConfigError("no scenario given (use --scenario or the config)");
    if (seed_opt->count() > 0) j["seed"] = seed;
    auto cfg = laguerre::ScenarioConfig::from_json(j);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) cfg.format = laguerre::parse_format(format);
    const auto report = laguerre::run_scenario(cfg);
    laguerre::emit_report(report, cfg.format, cfg.out_path);
    std::cerr << report.scenario << ": " << (report.pass ? "PASS" : "FAIL") << " (" << report.rows.size()
              << " rows, " << report.wall_time << " s)\n";
    return report.pass ? 0 : 1;
  } catch (const laguerre::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}

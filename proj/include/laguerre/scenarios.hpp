#pragma once

// Verification scenarios run by the laguerre-ops CLI and the acceptance suite.

#include <json.hpp>
#include <limits>
#include <string>
#include <vector>

#include "laguerre/expansion.hpp"
#include "laguerre/lipschitz.hpp"
#include "laguerre/report.hpp"

namespace laguerre {

struct ScenarioConfig {
  std::string scenario;
  MultiIndexParams params = MultiIndexParams::make({0.5});
  double beta = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  // Lipschitz grids: dyadic t in [t_max 2^{-t_levels}, t_max]; x log-spaced.
  double t_max = 5.0;
  int t_levels = 10;
  double x_min = 0.05;
  double x_max = 20.0;
  int x_points = 24;
  // Degree and count of the seeded random expansions.
  int degree = 6;
  int family_size = 2;
  unsigned long long seed = 1;
  // Test function: {"kind": "combination", "terms": [{"k": [1], "c": 1}, ...]},
  // {"kind": "random", "degree": N, "seed": S}, {"kind": "basis", "k": [...]} or {"kind": "constant", "c": v}.
  nlohmann::json function = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  // Scenario-specific lists (t_values, x_values, orders, lambdas, alphas, ...).
  nlohmann::json options = nlohmann::json::object();
  std::string out_path;
  ReportFormat format = ReportFormat::Json;

  static ScenarioConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
  // ConfigError naming the violated constraint.
  void validate() const;

  LipschitzGrids grids() const;
  double tolerance(const std::string& name, double fallback) const;
  LaguerreExpansion test_function() const;
  // The test function followed by family_size seeded random expansions.
  std::vector<LaguerreExpansion> test_family() const;
};

struct ScenarioInfo {
  std::string tag;
  std::string claim;
};

const std::vector<ScenarioInfo>& scenario_catalog();

BoundReport run_scenario(const ScenarioConfig& cfg);

}  // namespace laguerre

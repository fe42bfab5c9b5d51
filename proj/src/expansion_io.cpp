#include <cstdio>
#include <string>

#include <json.hpp>

#include "laguerre/error.hpp"
#include "laguerre/expansion.hpp"

namespace laguerre {

namespace {

std::string exact_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double read_real(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("expansion JSON: not a real number: " + s);
    }
    if (used != s.size()) throw ConfigError("expansion JSON: trailing characters in " + s);
    return v;
  }
  throw ConfigError("expansion JSON: expected number or decimal string");
}

}  // namespace

std::string to_json(const LaguerreExpansion& e) {
  nlohmann::ordered_json j;
  j["d"] = e.params.d;
  j["alpha"] = nlohmann::ordered_json::array();
  for (double a : e.params.alpha) j["alpha"].push_back(exact_string(a));
  j["N"] = e.degree;
  j["coeffs"] = nlohmann::ordered_json::array();
  for (const auto& [k, c] : e.coeffs) {
    nlohmann::ordered_json row;
    row["k"] = k.k;
    row["c"] = exact_string(c);
    j["coeffs"].push_back(row);
  }
  return j.dump(2);
}

LaguerreExpansion expansion_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("expansion JSON: ") + ex.what());
  }
  try {
    std::vector<double> alpha;
    for (const auto& a : j.at("alpha")) alpha.push_back(read_real(a));
    LaguerreExpansion e;
    e.params = MultiIndexParams::make(std::move(alpha));
    if (j.at("d").get<int>() != e.params.d) throw ConfigError("expansion JSON: d does not match alpha length");
    e.degree = j.at("N").get<int>();
    for (const auto& row : j.at("coeffs")) {
      MultiIndex k{row.at("k").get<std::vector<int>>()};
      e.coeffs[k] = read_real(row.at("c"));
    }
    e.validate();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("expansion JSON: ") + ex.what());
  } catch (const DomainError& ex) {
    throw ConfigError(std::string("expansion JSON: ") + ex.what());
  }
}

}  // namespace laguerre

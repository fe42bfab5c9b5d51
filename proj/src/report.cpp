#include "laguerre/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "laguerre/error.hpp"

namespace laguerre {

void BoundReport::add_upper(std::string point, double measured, double bound) {
  const bool ok = std::isfinite(measured) && measured <= bound;
  rows.push_back(ReportRow{std::move(point), measured, bound, bound - measured, ok});
}

void BoundReport::add_row(std::string point, double measured, double bound, bool ok) {
  rows.push_back(ReportRow{std::move(point), measured, bound, bound - measured, ok});
}

void BoundReport::finalize() {
  pass = true;
  for (const auto& r : rows) pass = pass && r.pass;
}

ReportFormat parse_format(const std::string& tag) {
  if (tag == "json") return ReportFormat::Json;
  if (tag == "csv") return ReportFormat::Csv;
  throw ConfigError("unknown report format '" + tag + "' (expected json or csv)");
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a real number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("trailing characters in real number: '" + s + "'");
  return v;
}

std::string to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["claim"] = r.claim;
  j["config"] = r.config;
  j["threshold"] = format_real(r.threshold);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["point"] = row.point;
    o["measured"] = format_real(row.measured);
    o["bound"] = format_real(row.bound);
    o["margin"] = format_real(row.margin);
    o["pass"] = row.pass;
    j["rows"].push_back(o);
  }
  j["summary"] = r.summary;
  j["pass"] = r.pass;
  j["wall_time"] = format_real(r.wall_time);
  return j.dump(2);
}

BoundReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    BoundReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.claim = j.at("claim").get<std::string>();
    r.config = j.at("config");
    r.threshold = parse_real(j.at("threshold").get<std::string>());
    for (const auto& o : j.at("rows")) {
      ReportRow row;
      row.point = o.at("point").get<std::string>();
      row.measured = parse_real(o.at("measured").get<std::string>());
      row.bound = parse_real(o.at("bound").get<std::string>());
      row.margin = parse_real(o.at("margin").get<std::string>());
      row.pass = o.at("pass").get<bool>();
      r.rows.push_back(std::move(row));
    }
    r.summary = j.at("summary");
    r.pass = j.at("pass").get<bool>();
    r.wall_time = parse_real(j.at("wall_time").get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("report JSON: ") + ex.what());
  }
}

std::string to_csv(const BoundReport& r) {
  std::string out = "scenario,point,measured,bound,margin\n";
  for (const auto& row : r.rows) {
    std::string point = row.point;
    if (point.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : point) {
        if (c == '"') q += '"';
        q += c;
      }
      point = q + "\"";
    }
    out += r.scenario + "," + point + "," + format_real(row.measured) + "," + format_real(row.bound) + "," +
           format_real(row.margin) + "\n";
  }
  return out;
}

void emit_report(const BoundReport& r, ReportFormat format, const std::string& path) {
  const std::string text = format == ReportFormat::Json ? to_json(r) + "\n" : to_csv(r);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open report file for writing: " + path);
  os << text;
  if (!os) throw std::runtime_error("failed writing report file: " + path);
}

}  // namespace laguerre

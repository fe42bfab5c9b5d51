#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace laguerre {

struct ReportRow {
  std::string point;
  double measured = 0.0;
  double bound = 0.0;
  // bound - measured for upper-bound rows; positive means inside the threshold.
  double margin = 0.0;
  bool pass = true;

  bool operator==(const ReportRow&) const = default;
};

struct BoundReport {
  std::string scenario;
  // Plain statement of the property the scenario measures.
  std::string claim;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  double threshold = 0.0;
  std::vector<ReportRow> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  bool pass = true;
  double wall_time = 0.0;

  // Appends an upper-bound row: pass iff measured is finite and <= bound.
  void add_upper(std::string point, double measured, double bound);
  // Appends a row with an explicit verdict.
  void add_row(std::string point, double measured, double bound, bool pass);
  // pass = every row passes.
  void finalize();
};

enum class ReportFormat { Json, Csv };

ReportFormat parse_format(const std::string& tag);
std::string format_real(double v);
double parse_real(const std::string& s);

std::string to_json(const BoundReport& r);
BoundReport report_from_json(const std::string& text);
// Rows only, header scenario,point,measured,bound,margin.
std::string to_csv(const BoundReport& r);
// Writes the report to path (stdout when empty or "-") in the given format.
void emit_report(const BoundReport& r, ReportFormat format, const std::string& path);

}  // namespace laguerre

// SPDX-License-Identifier: Apache-2.0
#include "tubelab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tubelab/errors.hpp"

namespace tubelab {

void Table::add(std::vector<double> row) {
  require_dims(row.size() == columns.size(), "report: row width does not match the table '" + name + "'");
  rows.push_back(std::move(row));
}

bool Report::passed() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
  for (auto& t : tables) {
    if (t.name == name) return t;
  }
  tables.push_back(Table{name, std::move(columns), {}});
  return tables.back();
}

void Report::fit(const std::string& name, double value, double std_error, double target) {
  fits.push_back(FitRecord{name, value, std_error, target});
}

void Report::criterion(const std::string& name, double value, double threshold, const std::string& rule, bool pass) {
  criteria.push_back(Criterion{name, value, threshold, rule, pass && std::isfinite(value)});
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(format_double(v)); }

}  // namespace

Json to_json(const Report& r) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = r.experiment;
  j["passed"] = r.passed();
  j["config"] = r.config;
  j["normalization"] = r.normalization;
  Json tables = Json::array();
  for (const auto& t : r.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json jr = Json::array();
      for (double v : row) jr.push_back(num(v));
      rows.push_back(jr);
    }
    tables.push_back(Json{{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
  }
  j["tables"] = tables;
  Json fits = Json::array();
  for (const auto& f : r.fits) {
    fits.push_back(
        Json{{"name", f.name}, {"value", num(f.value)}, {"std_error", num(f.std_error)}, {"target", num(f.target)}});
  }
  j["fits"] = fits;
  Json crit = Json::array();
  for (const auto& c : r.criteria) {
    crit.push_back(Json{{"name", c.name},
                        {"value", num(c.value)},
                        {"threshold", num(c.threshold)},
                        {"rule", c.rule},
                        {"pass", c.pass}});
  }
  j["criteria"] = crit;
  j["notes"] = r.notes;
  return j;
}

void write_report(const Report& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& t : r.tables) {
    std::ofstream out(dir + "/" + t.name + ".csv", std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + dir + "/" + t.name + ".csv'");
    out << to_csv(t);
  }
  std::ofstream js(dir + "/report.json", std::ios::binary);
  if (!js) throw ConfigError("cannot write '" + dir + "/report.json'");
  js << to_json(r).dump(2) << "\n";
}

}  // namespace tubelab

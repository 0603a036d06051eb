// SPDX-License-Identifier: Apache-2.0
//
// Experiment result records and their CSV / JSON serialization.
#pragma once

#include <string>
#include <vector>

#include "tubelab/config.hpp"

namespace tubelab {

inline constexpr int kReportSchemaVersion = 1;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

struct FitRecord {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  double target = 0.0;
};

struct Criterion {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  // Human-readable form of the test, e.g. "|ratio - 1| <= threshold".
  std::string rule;
  bool pass = false;
};

struct Report {
  std::string experiment;
  Json config = Json::object();
  Json normalization = Json::object();
  std::vector<Table> tables;
  std::vector<FitRecord> fits;
  std::vector<Criterion> criteria;
  std::vector<std::string> notes;

  bool passed() const;
  Table& table(const std::string& name, std::vector<std::string> columns);
  void fit(const std::string& name, double value, double std_error, double target);
  void criterion(const std::string& name, double value, double threshold, const std::string& rule, bool pass);
};

// Full-precision scientific notation (17 significant digits).
std::string format_double(double v);
std::string to_csv(const Table& t);
Json to_json(const Report& r);

// Writes <dir>/<table>.csv for each table and <dir>/report.json.
void write_report(const Report& r, const std::string& dir);

}  // namespace tubelab

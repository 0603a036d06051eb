// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tubelab/fit.hpp"
#include "tubelab/parallel.hpp"
#include "tubelab/report.hpp"

using namespace tubelab;

TEST(Fit, ExactLine) {
  LinearFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.slope_se, 0.0, 1e-14);
  EXPECT_EQ(f.n, 4);
}

TEST(Fit, LogLogExponent) {
  std::vector<double> x{100, 141, 200, 283, 400}, y;
  for (double v : x) y.push_back(-3.0 * std::pow(v, -0.5));
  LinearFit f = fit_loglog(x, y);
  EXPECT_NEAR(f.slope, -0.5, 1e-13);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
}

TEST(Fit, ZeroCrossingFrequency) {
  std::vector<double> t, f;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(i * 0.01);
    f.push_back(std::cos(7.0 * t.back() + 0.3));
  }
  EXPECT_NEAR(zero_crossing_frequency(t, f), 7.0, 1e-3);
  EXPECT_EQ(zero_crossing_frequency({0, 1}, {1, 1}), 0.0);
}

TEST(Fit, StrictlyDecreasing) {
  EXPECT_TRUE(strictly_decreasing({3, 2, 1}));
  EXPECT_FALSE(strictly_decreasing({3, 3, 1}));
}

TEST(Parallel, CompensatedSum) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-24);
}

TEST(Report, DoublesRoundTrip) {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 0.0}) EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
}

TEST(Report, CsvAndJsonOutputs) {
  Report r;
  r.experiment = "demo";
  Table& t = r.table("values", {"a", "b"});
  t.add({1.0, 0.5});
  t.add({2.0, -0.25});
  r.fit("slope", -0.5, 0.01, -0.5);
  r.criterion("ok", 0.1, 0.2, "value <= threshold", true);
  EXPECT_TRUE(r.passed());
  std::string csv = to_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "a,b");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  Json j = to_json(r);
  EXPECT_EQ(j["experiment"], "demo");
  EXPECT_EQ(j["criteria"][0]["pass"], true);
  EXPECT_TRUE(j.contains("schema_version"));

  auto dir = std::filesystem::temp_directory_path() / "tubelab_report_test";
  std::filesystem::remove_all(dir);
  write_report(r, dir.string());
  EXPECT_TRUE(std::filesystem::exists(dir / "values.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  std::ifstream in(dir / "values.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), csv);
  std::filesystem::remove_all(dir);

  r.criterion("bad", 1.0, 0.2, "value <= threshold", false);
  EXPECT_FALSE(r.passed());
}

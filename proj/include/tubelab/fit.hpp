// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace tubelab {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // standard errors; zero when n <= 2
  double intercept_se = 0.0;
  int n = 0;
};

// Ordinary least squares y = intercept + slope * x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fit of log|y| against log x.
LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Angular frequency of f sampled at increasing t, from the mean spacing of
// its sign changes (linearly interpolated).  Returns 0 with fewer than two
// crossings.
double zero_crossing_frequency(const std::vector<double>& t, const std::vector<double>& f);

bool strictly_decreasing(const std::vector<double>& v);

}  // namespace tubelab
